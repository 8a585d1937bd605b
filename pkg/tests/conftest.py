from pathlib import Path

import pytest

from basediv import GeometricContext, K3N, KUMN, Lattice, make_type

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture
def u_lattice():
    return Lattice([[0, 1], [1, 0]])


@pytest.fixture
def k3_pencil():
    """Elliptic K3 with a section: basis (E, C), E^2 = 0, C^2 = -2, E.C = 1."""
    lat = Lattice([[0, 1], [1, -2]])
    return GeometricContext(
        lat, (3, 1), peds=[(0, 1)], dtype=make_type(K3N, 1), strong_rlf=True
    )


@pytest.fixture
def u_walk_ctx():
    """U with the single declared ped f - e; f reflects to e."""
    lat = Lattice([[0, 1], [1, 0]])
    return GeometricContext(
        lat, (2, 1), peds=[(-1, 1)], dtype=make_type(K3N, 1), strong_rlf=True
    )


@pytest.fixture
def kum2_ctx():
    lat = Lattice([[0, 1], [1, 0]])
    return GeometricContext(
        lat, (1, 2), peds=[(1, -1)], dtype=make_type(KUMN, 2), strong_rlf=True
    )
