"""Shared fixtures, potential stand-ins, and frozen reference values."""

from dataclasses import dataclass
from math import pi

import pytest

from cotwell import Grid, PotentialModel, numerov


@dataclass(frozen=True)
class FlatWell:
    """Constant potential v0/3 between regular hard walls: the plain box
    shifted by the well minimum.  Levels sit at n^2/8 + v0/3."""

    v0: float = 1.0

    def value(self, x: float) -> float:
        return self.v0 / 3.0

    def minimum(self) -> float:
        return self.v0 / 3.0

    def wall_expansion(self):
        return (0.0, self.v0 / 3.0, 0.0, 0.0)


@dataclass(frozen=True)
class QuadraticWell:
    """The oscillator truncation v0*(1/3 + x^2/45) as a standalone model;
    its action integral has the exact closed form pi*(eps - v0/3)/omega."""

    v0: float = 1.0

    def value(self, x: float) -> float:
        return self.v0 * (1.0 / 3.0 + x * x / 45.0)

    def minimum(self) -> float:
        return self.v0 / 3.0

    def wall_expansion(self):
        return (0.0, self.value(pi), -2.0 * pi * self.v0 / 45.0,
                self.v0 / 45.0)


# Converged shooting energies at N = 8000 (cross-checked against an
# independent finite-difference diagonalization with Richardson
# extrapolation, which agrees to ~1e-9).
CONVERGED_ENERGIES = (
    0.5000000000,
    0.9421106215,
    1.6101807516,
    2.5160961196,
    3.6649865322,
    5.0593816077,
    6.7006786054,
    8.5897201692,
)

# Tabulated reference energies (four decimals) that the comparison targets.
REFERENCE_NUMEROV = (0.5000, 0.9424, 1.6108, 2.5175,
                     3.6672, 5.0628, 6.7055, 8.5963)
REFERENCE_WKB = (0.4579, 0.8408, 1.4307, 2.2465,
                 3.2976, 4.5890, 6.1237, 7.9035)
REFERENCE_SPT = (0.4886, 0.9028, 1.5566, 2.5143,
                 3.8414, 5.6014, 7.8593, 10.6795)
REFERENCE_SECOND_ORDER = (-0.028234621, -0.2218, -0.8269, -2.1176,
                          -4.3683, -7.8533, -12.8468, -19.6231)


@pytest.fixture(scope="session")
def model() -> PotentialModel:
    return PotentialModel()


@pytest.fixture(scope="session")
def grid8000() -> Grid:
    return Grid(8000)


@pytest.fixture(scope="session")
def grid2000() -> Grid:
    return Grid(2000)


@pytest.fixture(scope="session")
def spectrum8000(model, grid8000):
    return numerov.solve_spectrum(model, grid8000, n_levels=8)


@pytest.fixture(scope="session")
def spectrum2000(model, grid2000):
    return numerov.solve_spectrum(model, grid2000, n_levels=8)


@pytest.fixture()
def flat_well() -> FlatWell:
    return FlatWell()


@pytest.fixture()
def quadratic_well() -> QuadraticWell:
    return QuadraticWell()
