"""Closed-form ground state phi(x) = A*sin(x)/x with energy 1/2 at v0 = 1.

Serves as the gold oracle for the numerical solvers: it satisfies the
wall condition phi(+-pi) = 0 exactly and the transformed equation
phi'' - 2*v(x)*phi + 2*eps*phi = 0 with eps = 1/2.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import cos, pi, sin, sqrt

from scipy.integrate import quad

from .potential import PotentialModel

__all__ = ["AnalyticGroundState", "ground_state", "ground_state_energy",
           "normalization_constant", "ode_residual", "solution"]

GROUND_STATE_ENERGY = 0.5

# sin(x)/x and its second derivative lose digits to cancellation near 0;
# switch to their Taylor series below this radius.
_SERIES_RADIUS = 0.1


@dataclass(frozen=True)
class AnalyticGroundState:
    amplitude: float
    energy: float = GROUND_STATE_ENERGY


@lru_cache(maxsize=1)
def normalization_constant() -> float:
    """A with A^-2 = integral of sin^2(x)/x^2 over [-pi, pi] (adaptive quadrature)."""
    half, _ = quad(_sinc_sq, 0.0, pi, epsabs=1e-12, epsrel=1e-12, limit=200)
    return 1.0 / sqrt(2.0 * half)


def _sinc_sq(x: float) -> float:
    if abs(x) < 1e-9:
        return 1.0 - x * x / 3.0
    s = sin(x) / x
    return s * s


@lru_cache(maxsize=1)
def solution() -> AnalyticGroundState:
    return AnalyticGroundState(amplitude=normalization_constant())


def ground_state_energy() -> float:
    return GROUND_STATE_ENERGY


def _sinc(x: float) -> float:
    ax = abs(x)
    if ax > _SERIES_RADIUS:
        return sin(x) / x
    # sum (-1)^n x^2n / (2n+1)!,  |error| < x^18/19! for 8 terms
    acc = 0.0
    x2 = x * x
    for k in range(8, 0, -1):
        acc = (acc + _SINC_COEF[k]) * x2
    return acc + 1.0


def _sinc_dd(x: float) -> float:
    # d^2/dx^2 [sin x / x] = -sin x/x - 2 cos x/x^2 + 2 sin x/x^3
    ax = abs(x)
    if ax > _SERIES_RADIUS:
        return -sin(x) / x - 2.0 * cos(x) / (x * x) + 2.0 * sin(x) / x**3
    acc = 0.0
    x2 = x * x
    for k in range(8, 0, -1):
        acc = (acc + _SINC_DD_COEF[k]) * x2
    return acc + _SINC_DD_COEF[0]


def _fact(n: int) -> float:
    out = 1.0
    for i in range(2, n + 1):
        out *= i
    return out


_SINC_COEF = {k: (-1.0) ** k / _fact(2 * k + 1) for k in range(9)}
# term-by-term second derivative: (2n)(2n-1) x^{2n-2} * (-1)^n / (2n+1)!
_SINC_DD_COEF = {k - 1: (-1.0) ** k * (2 * k) * (2 * k - 1) / _fact(2 * k + 1)
                 for k in range(1, 10)}


def ground_state(x: float, amplitude: float | None = None) -> float:
    """Normalized ground-state amplitude at x; A itself at the removable x = 0."""
    if abs(x) > pi:
        raise ValueError(f"position {x!r} outside the well [-pi, pi]")
    if amplitude is None:
        amplitude = normalization_constant()
    return amplitude * _sinc(x)


def ode_residual(x: float, model: PotentialModel | None = None) -> float:
    """phi'' - 2*v(x)*phi + 2*eps*phi at eps = 1/2; ~0 for 0 < |x| < pi."""
    if model is None:
        model = PotentialModel()
    a = normalization_constant()
    phi = a * _sinc(x)
    phi_dd = a * _sinc_dd(x)
    return phi_dd - 2.0 * model.value(x) * phi + 2.0 * GROUND_STATE_ENERGY * phi
