import pytest

from idealarr.bases import default_basis
from idealarr.rootsys import LieType, build
from idealarr.saito import RecursionOracle


def system(tag: str):
    return build(LieType.parse(tag))


def basis(tag: str):
    return default_basis(system(tag))


_ORACLES: dict[str, RecursionOracle] = {}


def oracle(tag: str) -> RecursionOracle:
    """Session-shared sweep/evaluation oracle (caches are expensive)."""
    if tag not in _ORACLES:
        _ORACLES[tag] = RecursionOracle(basis(tag))
    return _ORACLES[tag]


@pytest.fixture(scope="session")
def e8_oracle():
    return oracle("E8")
