"""The symmetric cotangent well v(x) = v0*(1 - x*cot(x))/x^2 on [-pi, pi].

The closed form suffers 0/0 cancellation near the origin, so evaluation
switches to the even power series (Bernoulli-number coefficients) below a
configurable radius.  The divergence at |x| = pi is replaced by a large
finite cap so grid-based solvers can carry potential samples at the walls.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, pi, tan

import numpy as np

from .grid import Grid

__all__ = ["BernoulliTable", "PotentialModel", "bernoulli"]


@dataclass(frozen=True)
class BernoulliTable:
    """Even-index Bernoulli numbers B_0, B_2, ..., B_{2n} as exact rationals."""

    values: tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        """Return B_{2i}."""
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=8)
def bernoulli(n_max: int) -> BernoulliTable:
    """Bernoulli numbers B_0..B_{2*n_max} by the defining sum recurrence.

    Uses sum_{j=0}^{m-1} C(m+1, j) B_j = 0 with B_0 = 1 (so B_1 = -1/2);
    only the even-index values are tabulated, exactly as Fractions.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    full = [Fraction(1)]
    for m in range(1, 2 * n_max + 1):
        s = sum(Fraction(comb(m + 1, j)) * full[j] for j in range(m))
        full.append(-s / (m + 1))
    return BernoulliTable(tuple(full[2 * i] for i in range(n_max + 1)))


@lru_cache(maxsize=32)
def _series_coefficients(order: int) -> tuple[float, ...]:
    # Coefficient of x^{2n-2} in -4 * sum_n (-1)^n (2x)^{2n-2} B_{2n}/(2n)!,
    # i.e. the expansion (1 - x*cot x)/x^2 = 1/3 + x^2/45 + 2x^4/945 + ...
    table = bernoulli(order)
    return tuple(
        float(-4 * (-1) ** n * Fraction(4) ** (n - 1) * table[n] / factorial(2 * n))
        for n in range(1, order + 1)
    )


@dataclass(frozen=True)
class PotentialModel:
    """Dimensionless well parameters and evaluation policy.

    Attributes:
        v0: well strength; the energy scale of the minimum v0/3.
        series_switch_radius: below this |x| the power series replaces the
            closed form (which loses digits to cancellation near 0).
        series_order: number of even Bernoulli terms kept in the series.
        wall_cap: finite stand-in for the divergence at |x| = pi.
    """

    v0: float = 1.0
    series_switch_radius: float = 0.1
    series_order: int = 8
    wall_cap: float = 1e12

    def __post_init__(self):
        if not self.v0 > 0:
            raise ValueError("v0 must be positive")
        if not 0.0 < self.series_switch_radius <= 1.0:
            raise ValueError("series_switch_radius must be in (0, 1]")
        if self.series_order < 4:
            raise ValueError("series_order must be >= 4")
        if self.wall_cap < 1e9:
            raise ValueError("wall_cap must be >= 1e9")

    def value(self, x: float) -> float:
        """Evaluate v(x); wall_cap at |x| = pi, error outside [-pi, pi]."""
        ax = abs(x)
        if ax > pi:
            raise ValueError(f"position {x!r} outside the well [-pi, pi]")
        if ax == pi:
            return self.wall_cap
        if ax <= self.series_switch_radius:
            return self.series_value(ax)
        # evaluated at |x| so evenness holds to the last bit
        return self.v0 * (1.0 - ax / tan(ax)) / (ax * ax)

    def series_value(self, x: float, order: int | None = None) -> float:
        """Power-series evaluation, exact at x = 0 (limit v0/3)."""
        if order is None:
            order = self.series_order
        if order < 1:
            raise ValueError("series order must be >= 1")
        ax = abs(x)
        if ax >= pi:
            raise ValueError(f"series only converges for |x| < pi, got {x!r}")
        acc = 0.0
        x2 = ax * ax
        for c in reversed(_series_coefficients(order)):
            acc = acc * x2 + c
        return self.v0 * acc

    def quadratic_value(self, x: float) -> float:
        """The O(x^2) truncation v0*(1/3 + x^2/45) used by closed-form WKB."""
        return self.v0 * (1.0 / 3.0 + x * x / 45.0)

    def minimum(self) -> float:
        """Value at the bottom of the well (x = 0)."""
        return self.series_value(0.0)

    def wall_expansion(self) -> tuple[float, float, float, float]:
        """Laurent coefficients (u_-1, u_0, u_1, u_2) of v near a wall.

        v(pi - t) = u_-1/t + u_0 + u_1*t + u_2*t^2 + O(t^3); the shooting
        integrator uses these to start and terminate trajectories with the
        correct local solution despite the divergence.
        """
        return (
            self.v0 / pi,
            2.0 * self.v0 / pi**2,
            self.v0 * (9.0 - pi**2) / (3.0 * pi**3),
            self.v0 * (12.0 - pi**2) / (3.0 * pi**4),
        )

    def profile(self, grid: Grid) -> np.ndarray:
        """Sample (x, v(x)) rows over the grid, walls capped."""
        return np.array([(x, self.value(x)) for x in grid.nodes])
