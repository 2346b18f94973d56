import json
from pathlib import Path

import pytest
from hypothesis import settings

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "toricres" / "fixtures"

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.json"


def fixture_doc(name: str):
    return json.loads(fixture_path(name).read_text())


@pytest.fixture
def fixtures_dir():
    return FIXTURES
