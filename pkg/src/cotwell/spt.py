"""Stationary perturbation theory around the oscillator with omega^2 = 2/45.

The well's even series v = 1/3 + x^2/45 + 2x^4/945 + x^6/4725 + ... splits
into an oscillator Hamiltonian plus the perturbation
W = 1/3 + 2x^4/945 + x^6/4725.  Ladder-operator algebra gives the x^4 and
x^6 matrix elements in closed form; energies carry first- and second-order
corrections (second order from the x^4 term only, unless the extended flag
pulls in the x^6 off-diagonals), and first-order states mix the n +- 2 and
n +- 4 basis states.
"""

from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

from .grid import Grid
from .numerov import EigenSolution, solution_from_samples

__all__ = [
    "OMEGA",
    "OscillatorBasis",
    "SptLevel",
    "first_order",
    "hermite",
    "perturbed_coefficients",
    "perturbed_state",
    "second_order",
    "total_energy",
    "unperturbed_state",
    "xi4_matrix_element",
    "xi6_matrix_element",
    "xi6_diagonal",
]

OMEGA = sqrt(2.0 / 45.0)
U_SCALE = (2.0 / 45.0) ** 0.25  # u = U_SCALE * x


@dataclass(frozen=True)
class OscillatorBasis:
    """Frequency and coordinate scaling of the unperturbed oscillator."""

    omega: float = OMEGA
    u_scale: float = U_SCALE


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError("oscillator index must be >= 0")


def xi4_matrix_element(m: int, n: int) -> float:
    """<m| 2*x^4/945 |n>; nonzero only for |m - n| in {0, 2, 4}.

    The 1/84 prefactor is (1/(2*omega))^2 * 2/945; radicands stay integer
    products so transposed elements agree exactly.
    """
    _check_index(m)
    _check_index(n)
    lo, hi = (m, n) if m <= n else (n, m)
    gap = hi - lo
    if gap == 0:
        return (6 * lo * lo + 6 * lo + 3) / 84.0
    if gap == 2:
        return (4 * lo + 6) * sqrt((lo + 1) * (lo + 2)) / 84.0
    if gap == 4:
        return sqrt((lo + 1) * (lo + 2) * (lo + 3) * (lo + 4)) / 84.0
    return 0.0


_XI6_SCALE = sqrt(45.0 / 2.0) / 1680.0  # (1/(2*omega))^3 / 4725


def xi6_matrix_element(m: int, n: int) -> float:
    """<m| x^6/4725 |n>; nonzero only for |m - n| in {0, 2, 4, 6}."""
    _check_index(m)
    _check_index(n)
    lo, hi = (m, n) if m <= n else (n, m)
    gap = hi - lo
    if gap == 0:
        poly = 20 * lo**3 + 30 * lo * lo + 40 * lo + 15
        return _XI6_SCALE * poly
    if gap == 2:
        poly = 15 * lo * lo + 45 * lo + 45
        return _XI6_SCALE * poly * sqrt((lo + 1) * (lo + 2))
    if gap == 4:
        poly = 6 * lo + 15
        return _XI6_SCALE * poly * sqrt(
            (lo + 1) * (lo + 2) * (lo + 3) * (lo + 4))
    if gap == 6:
        rad = 1
        for j in range(1, 7):
            rad *= lo + j
        return _XI6_SCALE * sqrt(rad)
    return 0.0


def xi6_diagonal(n: int) -> float:
    """Diagonal x^6 contribution, the only one entering first order."""
    return xi6_matrix_element(n, n)


def first_order(n: int) -> float:
    """First-order energy correction:
    1/3 + (6n^2 + 6n + 3)/84 + sqrt(45/2)*(20n^3 + 30n^2 + 40n + 15)/1680."""
    _check_index(n)
    return 1.0 / 3.0 + xi4_matrix_element(n, n) + xi6_diagonal(n)


def second_order(n: int, include_xi6: bool = False) -> float:
    """Second-order correction from the x^4 coupling (x^6 off-diagonals only
    with ``include_xi6``); always negative for the ground state."""
    _check_index(n)
    gaps = (-4, -2, 2, 4, -6, 6) if include_xi6 else (-4, -2, 2, 4)
    total = 0.0
    for gap in gaps:
        k = n + gap
        if k < 0:
            continue
        element = xi4_matrix_element(k, n)
        if include_xi6:
            element += xi6_matrix_element(k, n)
        if element:
            total += element * element / (-gap * OMEGA)
    return total


@dataclass(frozen=True)
class SptLevel:
    """Energy decomposition of one level plus the first-order mixing
    coefficients of its state."""

    level: int
    e0: float
    e1: float
    e2: float
    total: float
    coefficients: dict[int, float]


def perturbed_coefficients(n: int) -> dict[int, float]:
    """Mixing coefficients c_k = <k|W|n>/(e0_n - e0_k) for k = n +- 2, n +- 4."""
    _check_index(n)
    out: dict[int, float] = {}
    for gap in (-4, -2, 2, 4):
        k = n + gap
        if k < 0:
            continue
        out[k] = xi4_matrix_element(k, n) / (-gap * OMEGA)
    return out


def total_energy(n: int) -> SptLevel:
    """Assemble e0 + e1 + e2 for level n."""
    _check_index(n)
    e0 = (n + 0.5) * OMEGA
    e1 = first_order(n)
    e2 = second_order(n)
    return SptLevel(level=n, e0=e0, e1=e1, e2=e2, total=e0 + e1 + e2,
                    coefficients=perturbed_coefficients(n))


def hermite(n: int, u: float) -> float:
    """H_n(u) by the recurrence H_{n+1} = 2u H_n - 2n H_{n-1}."""
    _check_index(n)
    if n == 0:
        return 1.0
    h_prev, h = 1.0, 2.0 * u
    for k in range(1, n):
        h_prev, h = h, 2.0 * u * h - 2.0 * k * h_prev
    return h


def unperturbed_state(n: int, x):
    """Oscillator eigenfunction (omega/pi)^(1/4) (2^n n!)^(-1/2) H_n(u) e^(-u^2/2).

    Evaluated with the weighted recurrence (the Gaussian folded into each
    term) so large |u| cannot overflow; accepts scalars or arrays.
    """
    _check_index(n)
    u = np.asarray(x, dtype=float) * U_SCALE
    weight = np.exp(-0.5 * u * u)
    h_prev = pi ** -0.25 * weight
    if n == 0:
        out = OMEGA ** 0.25 * h_prev
        return float(out) if np.isscalar(x) else out
    h = sqrt(2.0) * u * h_prev
    for k in range(1, n):
        h_prev, h = h, sqrt(2.0 / (k + 1.0)) * u * h - sqrt(k / (k + 1.0)) * h_prev
    out = OMEGA ** 0.25 * h
    return float(out) if np.isscalar(x) else out


def perturbed_state(n: int, grid: Grid) -> EigenSolution:
    """First-order corrected state on the grid, renormalized over [-pi, pi]."""
    samples = unperturbed_state(n, grid.nodes)
    for k, c in perturbed_coefficients(n).items():
        samples = samples + c * unperturbed_state(k, grid.nodes)
    return solution_from_samples(n, total_energy(n).total, samples, grid, "spt")
