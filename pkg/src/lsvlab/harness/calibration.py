"""Frozen calibration constants.

The first run that calibrates a constant writes it to a JSON fixture. Every
later run must reproduce it within a relative slack (5% by default) or it
is reported as a regression.
"""
import json
from pathlib import Path
from typing import Dict, Literal, Optional

from pydantic import BaseModel

from lsvlab.config import config
from lsvlab.errors import SchemaError
from lsvlab.log import get_logger

logger = get_logger(__name__)

DEFAULT_SLACK = 0.05
# values this small on both sides count as equal (e.g. a constant calibrated to 0)
ABS_FLOOR = 1e-12


class CalibrationOutcome(BaseModel):
    name: str
    value: float
    frozen: float
    status: Literal["frozen", "reproduced", "regressed"]

    @property
    def passed(self) -> bool:
        return self.status != "regressed"


def within_slack(value: float, frozen: float, slack: float = DEFAULT_SLACK) -> bool:
    if abs(value) <= ABS_FLOOR and abs(frozen) <= ABS_FLOOR:
        return True
    return abs(value - frozen) <= slack * max(abs(value), abs(frozen))


class CalibrationStore:
    def __init__(self, path: Optional[Path] = None) -> None:
        self.path = Path(path) if path is not None else config.calibration_path

    def load(self) -> Dict[str, float]:
        if not self.path.exists():
            return {}
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{self.path}: not valid JSON ({exc})") from exc
        if not isinstance(data, dict) or not all(isinstance(v, (int, float)) for v in data.values()):
            raise SchemaError(f"{self.path}: expected an object of name -> number")
        return {str(k): float(v) for k, v in data.items()}

    def _save(self, constants: Dict[str, float]) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "w", encoding="utf-8") as f:
            json.dump(dict(sorted(constants.items())), f, indent=2)
            f.write("\n")

    def get(self, name: str) -> Optional[float]:
        return self.load().get(name)

    def check_or_freeze(self, name: str, value: float, slack: float = DEFAULT_SLACK) -> CalibrationOutcome:
        constants = self.load()
        if name not in constants:
            constants[name] = float(value)
            self._save(constants)
            logger.info("froze calibration constant %s = %.6g in %s", name, value, self.path)
            return CalibrationOutcome(name=name, value=value, frozen=value, status="frozen")
        frozen = constants[name]
        if within_slack(value, frozen, slack):
            return CalibrationOutcome(name=name, value=value, frozen=frozen, status="reproduced")
        logger.warning("calibration %s drifted: %.6g against frozen %.6g", name, value, frozen)
        return CalibrationOutcome(name=name, value=value, frozen=frozen, status="regressed")
