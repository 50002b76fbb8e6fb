from __future__ import annotations

import sys
from pathlib import Path
from typing import Any, Dict

import pytest
import yaml

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from gsco_splice.config import ToolkitConfig, load_config

DATA_DIR = Path(__file__).resolve().parent / "data"


def make_config_dict(*, profiles: bool = False) -> Dict[str, Any]:
    root: Dict[str, Any] = {
        "closure": {
            "max_len": 6,
            "intermediate_cap_factor": 2,
            "max_iter": None,
            "direction_mode": "two",
        },
        "construction": {
            "star_pair_include_base": True,
            "splice_include_base": False,
            "default_max_len": 4,
        },
        "logging": {"level": "INFO"},
    }
    limits = {"enumeration_cap": 5000, "subset_state_cap": 2000, "pair_state_cap": 20000}
    if profiles:
        root["default_profile"] = "small"
        root["profiles"] = {
            "small": {**limits, "name": "Small"},
            "large": {**limits, "name": "Large", "enumeration_cap": 50000},
        }
    else:
        root["limits"] = limits
    return root


@pytest.fixture
def config_path(tmp_path: Path) -> Path:
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(make_config_dict(), sort_keys=False), encoding="utf-8")
    return path


@pytest.fixture
def profile_config_path(tmp_path: Path) -> Path:
    path = tmp_path / "profiles.yaml"
    path.write_text(yaml.safe_dump(make_config_dict(profiles=True), sort_keys=False), encoding="utf-8")
    return path


@pytest.fixture
def toolkit_config(config_path: Path) -> ToolkitConfig:
    return load_config(config_path)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def word_files(tmp_path: Path) -> Dict[str, Path]:
    files = {"ab": "ab\n", "ba": "ba\n", "abba": "# two words\nab\nba\n"}
    paths = {}
    for name, text in files.items():
        path = tmp_path / f"{name}.words"
        path.write_text(text, encoding="utf-8")
        paths[name] = path
    return paths
