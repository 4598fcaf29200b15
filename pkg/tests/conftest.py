from __future__ import annotations

import pathlib

import pytest

from softtopo.core import SoftSet, Universe
from softtopo.document import parse_file

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def soft(universe: Universe, **by_param) -> SoftSet:
    """Shorthand: soft(u, e1=["a"], e2=["b", "c"])."""
    return SoftSet.from_points(universe, by_param)


@pytest.fixture(scope="session")
def abcd_doc():
    # four points, six members; the closure/interior/nbd regression space
    return parse_file(fixture_path("ex23.json"))


@pytest.fixture(scope="session")
def abcd_topo(abcd_doc):
    return abcd_doc.topology


@pytest.fixture(scope="session")
def fgh_doc():
    # five members F, G, H; the subspace regression space
    return parse_file(fixture_path("ex31.json"))


@pytest.fixture(scope="session")
def fgh_topo(fgh_doc):
    return fgh_doc.topology
