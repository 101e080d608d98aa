from __future__ import annotations

from pathlib import Path

import pytest

from sqwe.code import StabilizerCode, read_code_file

CODES = Path(__file__).resolve().parent.parent / "codes"

FIVE = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
STEANE = ["XXXXIII", "XXIIXXI", "XIXIXIX", "ZZZZIII", "ZZIIZZI", "ZIZIZIZ"]
SEVEN = ["XXXXIII", "-XXXXYIX", "YIZXIXI", "ZZZZIII", "-ZZZZXIZ", "XIYZIZI"]


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long searches")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="long-running; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def five() -> StabilizerCode:
    return StabilizerCode.from_strings(FIVE)


@pytest.fixture
def steane() -> StabilizerCode:
    return StabilizerCode.from_strings(STEANE)


@pytest.fixture
def seven() -> StabilizerCode:
    return StabilizerCode.from_strings(SEVEN)


@pytest.fixture
def code_dir() -> Path:
    return CODES


def load(name: str) -> StabilizerCode:
    return read_code_file(CODES / name)
