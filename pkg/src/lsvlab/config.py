import os
from pathlib import Path
from pydantic import BaseModel


class Config(BaseModel):
    output_dir: Path
    profile: str = "desk"
    workers: int = 1
    calibration_file: Path | None = None
    log_level: str = "WARNING"
    tol: float = 1e-10

    # Budgets shared by the exact engines
    range_budget: int = 10_000_000
    enum_budget: int = 2**20

    @staticmethod
    def get_default_output_dir() -> Path:
        return Path.home() / "lsvlab-runs"

    @classmethod
    def load(cls) -> "Config":
        output_dir_env = os.getenv("LSVLAB_OUTPUT_DIR")
        output_dir = Path(output_dir_env).expanduser() if output_dir_env else cls.get_default_output_dir()

        calibration_env = os.getenv("LSVLAB_CALIBRATION_FILE")
        calibration_file = Path(calibration_env).expanduser() if calibration_env else None

        workers_env = os.getenv("LSVLAB_WORKERS")
        tol_env = os.getenv("LSVLAB_TOL")
        range_budget_env = os.getenv("LSVLAB_RANGE_BUDGET")
        enum_budget_env = os.getenv("LSVLAB_ENUM_BUDGET")

        return cls(
            output_dir=output_dir,
            profile=os.getenv("LSVLAB_PROFILE", "desk").lower(),
            workers=int(workers_env) if workers_env else 1,
            calibration_file=calibration_file,
            log_level=os.getenv("LSVLAB_LOG_LEVEL", "WARNING").upper(),
            tol=float(tol_env) if tol_env else 1e-10,
            range_budget=int(range_budget_env) if range_budget_env else 10_000_000,
            enum_budget=int(enum_budget_env) if enum_budget_env else 2**20,
        )

    @property
    def calibration_path(self) -> Path:
        return self.calibration_file or self.output_dir / "calibration.json"

    def ensure_dirs(self) -> None:
        self.output_dir.mkdir(parents=True, exist_ok=True)

# Global config instance
config = Config.load()
