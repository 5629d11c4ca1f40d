import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def frozen():
    """High-precision values written by scripts/freeze_oracles.py."""
    return json.loads((DATA / "frozen_oracles.json").read_text())
