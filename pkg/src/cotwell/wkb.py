"""Semiclassical treatments of the well.

Two quantizations are implemented: the closed-form hard-wall result built
on the O(x^2) truncation of the potential (levels labelled n >= 1), and
the full phase-integral condition action(eps) = (n + 1/2)*pi with
energy-dependent turning points (levels labelled n >= 0).  Classical-region
wavefunctions cos/sin(sigma)/sqrt(p) complete the picture.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import pi, sqrt

import numpy as np
from scipy.optimize import brentq

from .grid import Grid
from .numerov import EigenSolution, solution_from_samples
from .potential import PotentialModel

__all__ = [
    "WkbLevel",
    "action_integral",
    "closed_form_energy",
    "hard_wall_energy",
    "momentum",
    "quantize",
    "quantize_scan",
    "turning_points",
    "wkb_wavefunction",
]


@dataclass(frozen=True)
class WkbLevel:
    """One quantized level: energy, symmetric turning points, and the value
    of the action integral at convergence."""

    level: int
    energy: float
    turning_points: tuple[float, float]
    action: float


def closed_form_energy(n: int) -> float:
    """Hard-wall energy of level n >= 1 from the O(x^2) potential, at v0 = 1.

    eps_n = (1/8)*(4 pi^2/135 + n^2/2 + sqrt(4 pi^2 n^2/135 + n^4/4)) + 1/3.
    """
    if n < 1:
        raise ValueError("closed-form levels are labelled n >= 1")
    c = 4.0 * pi * pi / 135.0
    return 0.125 * (c + n * n / 2.0 + sqrt(c * n * n + n**4 / 4.0)) + 1.0 / 3.0


def momentum(model: PotentialModel, energy: float, x: float) -> float:
    """Classical momentum p(x) = sqrt(2*(eps - v(x))); zero where forbidden."""
    gap = energy - model.value(x)
    return sqrt(2.0 * gap) if gap > 0.0 else 0.0


def turning_points(model: PotentialModel, energy: float) -> tuple[float, float]:
    """Solve v(x) = eps for the symmetric pair (-x2, x2), x2 in (0, pi)."""
    if energy <= model.minimum():
        raise ValueError(
            f"energy {energy} does not exceed the well minimum {model.minimum()}")
    lo, hi = 1e-12, pi * (1.0 - 1e-14)
    if model.value(hi) <= energy:
        raise ValueError(f"energy {energy} exceeds the wall cap region")
    x2 = brentq(lambda x: model.value(x) - energy, lo, hi,
                xtol=1e-14, rtol=8.9e-16)
    return (-x2, x2)


@lru_cache(maxsize=1)
def _gauss_nodes() -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(64)


def _half_action(model: PotentialModel, energy: float, x2: float,
                 panels: int = 2) -> float:
    # integral of p over [0, x2] under x = x2*sin(theta); the substitution
    # absorbs the inverse-square-root turning-point behaviour, leaving a
    # smooth integrand for Gauss-Legendre panels.
    nodes, weights = _gauss_nodes()
    total = 0.0
    edges = np.linspace(0.0, 0.5 * pi, panels + 1)
    for a, b in zip(edges[:-1], edges[1:]):
        theta = 0.5 * (b - a) * (nodes + 1.0) + a
        w = 0.5 * (b - a) * weights
        xs = x2 * np.sin(theta)
        gap = energy - np.array([model.value(x) for x in xs])
        integrand = np.sqrt(2.0 * np.maximum(gap, 0.0)) * x2 * np.cos(theta)
        total += float(np.sum(w * integrand))
    return total


def action_integral(model: PotentialModel, energy: float) -> float:
    """Phase integral of p(x) between the turning points."""
    _, x2 = turning_points(model, energy)
    return 2.0 * _half_action(model, energy, x2)


def quantize(model: PotentialModel, n: int, tol: float = 1e-8) -> WkbLevel:
    """Solve action(eps) = (n + 1/2)*pi for level n >= 0.

    The action grows monotonically with energy, so the root is bracketed
    by geometric expansion and refined with a safeguarded hybrid solver;
    the returned level satisfies |action - (n + 1/2)*pi| < tol.
    """
    if n < 0:
        raise ValueError("level index must be >= 0")
    target = (n + 0.5) * pi
    lo = model.minimum() + 1e-9
    hi = max(1.0, model.minimum() + 0.15 * (n + 1) ** 2)
    while action_integral(model, hi) < target:
        hi *= 1.6
    energy = brentq(lambda e: action_integral(model, e) - target, lo, hi,
                    xtol=1e-13, rtol=8.9e-16)
    action = action_integral(model, energy)
    if abs(action - target) > tol:
        raise RuntimeError(
            f"quantization residual {abs(action - target)} exceeds {tol}")
    return WkbLevel(level=n, energy=energy,
                    turning_points=turning_points(model, energy),
                    action=action)


def quantize_scan(model: PotentialModel, n: int, step: float = 1e-4,
                  start: float | None = None) -> WkbLevel:
    """Step-scan compatibility mode: walk the energy upward in fixed steps
    and return the first value whose action crosses (n + 1/2)*pi."""
    if n < 0:
        raise ValueError("level index must be >= 0")
    target = (n + 0.5) * pi
    energy = model.minimum() + step if start is None else start
    while action_integral(model, energy) < target:
        energy += step
    return WkbLevel(level=n, energy=energy,
                    turning_points=turning_points(model, energy),
                    action=action_integral(model, energy))


def hard_wall_energy(model: PotentialModel, n: int) -> float:
    """Numerical counterpart of closed_form_energy: solve the hard-wall
    condition (integral of p over the box) = n*pi with the O(x^2) potential
    and the exact square root.

    The integrand is clamped to the classically allowed region, so levels
    whose turning points fall inside the box are quantized over
    [-x2, x2] rather than the full box.
    """
    if n < 1:
        raise ValueError("hard-wall levels are labelled n >= 1")
    target = n * pi

    def box_integral(energy: float) -> float:
        gap0 = energy - model.minimum()
        x2 = sqrt(45.0 * gap0 / model.v0)
        nodes, weights = _gauss_nodes()
        if x2 >= pi:
            # allowed everywhere: integrate straight across [0, pi]
            xs = 0.5 * pi * (nodes + 1.0)
            w = 0.5 * pi * weights
            gap = energy - model.v0 * (1.0 / 3.0 + xs * xs / 45.0)
            return 2.0 * float(np.sum(w * np.sqrt(2.0 * np.maximum(gap, 0.0))))
        theta = 0.25 * pi * (nodes + 1.0)
        w = 0.25 * pi * weights
        xs = x2 * np.sin(theta)
        gap = energy - model.v0 * (1.0 / 3.0 + xs * xs / 45.0)
        integrand = np.sqrt(2.0 * np.maximum(gap, 0.0)) * x2 * np.cos(theta)
        return 2.0 * float(np.sum(w * integrand))

    lo = model.minimum() + 1e-9
    hi = max(1.0, model.minimum() + 0.15 * (n + 1) ** 2)
    while box_integral(hi) < target:
        hi *= 1.6
    return brentq(lambda e: box_integral(e) - target, lo, hi,
                  xtol=1e-12, rtol=8.9e-16)


def wkb_wavefunction(model: PotentialModel, level: WkbLevel, grid: Grid,
                     delta: float = 1e-3) -> EigenSolution:
    """Classical-region wavefunction cos/sin(sigma(x))/sqrt(p(x)).

    The 1/sqrt(p) amplitude diverges at the turning points, so samples are
    truncated ``delta`` inside the classical region, zeroed outside, and
    renormalized on the grid.  Parity follows the level index.
    """
    x1, x2 = level.turning_points
    energy = level.energy
    nodes = grid.nodes
    center = grid.n // 2
    xs_right = nodes[center:]
    mask = xs_right <= x2 - delta

    p = np.zeros_like(xs_right)
    p[mask] = [sqrt(2.0 * (energy - model.value(x))) for x in xs_right[mask]]

    # phase sigma(x) = integral of p from 0 to x, accumulated along the grid
    sigma = np.zeros_like(xs_right)
    dx = grid.h
    run = 0.0
    for i in range(1, len(xs_right)):
        if not mask[i]:
            break
        run += 0.5 * dx * (p[i - 1] + p[i])
        sigma[i] = run

    half = np.zeros_like(xs_right)
    if level.level % 2 == 0:
        half[mask] = np.cos(sigma[mask]) / np.sqrt(p[mask])
    else:
        half[mask] = np.sin(sigma[mask]) / np.sqrt(p[mask])

    samples = np.empty_like(nodes)
    samples[center:] = half
    sign = 1.0 if level.level % 2 == 0 else -1.0
    samples[:center] = sign * half[:0:-1]
    # interior starting value x1 + delta mirrors x2 - delta by symmetry
    assert x1 == -x2
    return solution_from_samples(level.level, energy, samples, grid, "wkb")
