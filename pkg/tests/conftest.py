import pytest

from lsvlab.config import config
from lsvlab.core.storage import storage


@pytest.fixture
def lab_env(tmp_path):
    """Point the output directory, storage and calibration fixture at tmp_path."""
    original_dir, original_calibration = config.output_dir, config.calibration_file
    config.output_dir = tmp_path
    config.calibration_file = tmp_path / "calibration.json"
    storage.root = tmp_path

    yield tmp_path

    config.output_dir = original_dir
    config.calibration_file = original_calibration
    storage.root = original_dir
