import sys
from pathlib import Path

import pytest

# Add src/ to sys.path so top-level modules import the way main.py sees them
PROJECT_ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(PROJECT_ROOT / "src"))

from params import Config  # noqa: E402
from scenarios import get_preset  # noqa: E402
from validate import raise_if_invalid  # noqa: E402


def preset_config(name: str, **sections) -> Config:
    doc = get_preset(name).document()
    for section, values in sections.items():
        doc[section] = {**doc.get(section, {}), **values}
    return raise_if_invalid(doc)


@pytest.fixture
def fig2a() -> Config:
    return preset_config("fig2a")


@pytest.fixture
def fig7a() -> Config:
    return preset_config("fig7a")


@pytest.fixture
def make_config():
    return preset_config
