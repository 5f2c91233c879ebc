import csv
import io
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from pydantic import BaseModel

from lsvlab.config import config
from lsvlab.core.domain import Base, IntMatrix
from lsvlab.errors import SchemaError
from lsvlab.log import get_logger

logger = get_logger(__name__)


def format_float(x: float) -> str:
    """Round-trip stable float text, so identical runs give identical bytes."""
    return format(float(x), ".17g")


def csv_text(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(x) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def read_csv(path: Path, expected_header: Sequence[str]) -> List[dict[str, str]]:
    if not Path(path).is_file():
        raise SchemaError(f"{path}: no such CSV file")
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or list(reader.fieldnames) != list(expected_header):
            raise SchemaError(
                f"{path}: expected columns {','.join(expected_header)}, got {reader.fieldnames}"
            )
        return list(reader)


class Storage:
    def __init__(self, root: Optional[Path] = None) -> None:
        self.root = root or config.output_dir

    def _resolve(self, path: Path | str) -> Path:
        p = Path(path)
        if not p.is_absolute():
            p = self.root / p
        p.parent.mkdir(parents=True, exist_ok=True)
        return p

    def write_text(self, path: Path | str, content: str) -> Path:
        target = self._resolve(path)
        with open(target, "w", encoding="utf-8", newline="") as f:
            f.write(content)
        logger.debug("wrote %s (%d bytes)", target, len(content))
        return target

    def read_text(self, path: Path | str) -> str:
        p = Path(path)
        if not p.is_absolute():
            p = self.root / p
        with open(p, "r", encoding="utf-8") as f:
            return f.read()

    def save_matrix(self, matrix: IntMatrix, path: Path | str) -> Path:
        return self.write_text(path, matrix.to_text())

    def load_matrix(self, path: Path | str) -> IntMatrix:
        return IntMatrix.from_text(self.read_text(path))

    def save_base(self, base: Base, path: Path | str) -> Path:
        return self.write_text(path, base.to_text())

    def load_base(self, path: Path | str) -> Base:
        return Base.from_text(self.read_text(path))

    def save_csv(self, path: Path | str, header: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
        return self.write_text(path, csv_text(header, rows))

    def save_report(self, path: Path | str, report: BaseModel) -> Path:
        return self.write_text(path, report.model_dump_json(indent=2) + "\n")


# Global storage instance
storage = Storage()
