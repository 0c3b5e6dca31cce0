"""Numerov integration and eigenvalue shooting for psi'' = -g(x)*psi.

The classical region is sampled with g(x) = 2*[eps - v(x)] on a uniform
grid.  Trajectories start at the left wall with psi_0 = 0 and a small
seed at the first interior node; the second interior value and the
terminal mismatch both come from the local power-law solution near the
walls (supplied by the potential via ``wall_expansion``), which keeps the
scheme fourth order even though v itself diverges there.  Eigenvalues are
located by scanning the mismatch in energy, bracketing its sign changes,
and bisecting each bracket.

Any potential object with hashable identity and the two methods
``value(x)`` and ``wall_expansion()`` can be solved; tests exploit this
with constant-well stand-ins.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import simpson

from .grid import Grid

__all__ = [
    "EigenSolution",
    "ShootingTrajectory",
    "find_eigenvalue",
    "integrate",
    "NoSignChangeError",
    "normalize",
    "numerov_step",
    "solution_from_samples",
    "solve_spectrum",
    "terminal_mismatch",
]

DEFAULT_SEED = 1e-4
_RESCALE_LIMIT = 1e150
_MIN_SOLVER_SEGMENTS = 100


class NoSignChangeError(ValueError):
    """Raised when a bracket does not straddle a root of the mismatch."""


@dataclass(frozen=True)
class ShootingTrajectory:
    """One left-to-right integration: samples psi_0..psi_N, terminal value,
    and the count of strict sign changes among interior samples."""

    samples: np.ndarray
    terminal: float
    nodes: int


@dataclass(frozen=True)
class EigenSolution:
    """One bound state with its normalized wavefunction samples."""

    level: int
    energy: float
    wavefunction: np.ndarray
    node_count: int
    parity: str
    method: str


def numerov_step(psi_k: float, psi_km1: float, g_km1: float, g_k: float,
                 g_kp1: float, h: float) -> float:
    """Advance psi'' = -g*psi by one step of the fourth-order recurrence."""
    denom = 1.0 + h * h * g_kp1 / 12.0
    if denom == 0.0:
        raise ZeroDivisionError(
            "Numerov denominator vanished: step too large for this g")
    return ((2.0 - 5.0 * h * h * g_k / 6.0) * psi_k
            - (1.0 + h * h * g_km1 / 12.0) * psi_km1) / denom


def _wall_solution(t, energy, wall):
    """Local solution s(t) ~ t + a2 t^2 + ... at distance t from a wall.

    ``wall`` holds the Laurent coefficients (u_-1, u_0, u_1, u_2) of the
    potential there; regular wells simply pass u_-1 = u_1 = u_2 = 0 and
    recover the sine series.  Works on scalars and arrays.
    """
    um1, u0, u1, u2 = wall
    d = u0 - energy
    a2 = um1
    a3 = (um1 * a2 + d) / 3.0
    a4 = (um1 * a3 + d * a2 + u1) / 6.0
    a5 = (um1 * a4 + d * a3 + u1 * a2 + u2) / 10.0
    return t * (1.0 + t * (a2 + t * (a3 + t * (a4 + t * a5))))


@lru_cache(maxsize=16)
def _potential_samples(model, grid: Grid) -> tuple[np.ndarray, tuple]:
    v = np.array([model.value(x) for x in grid.nodes])
    v.setflags(write=False)
    return v, model.wall_expansion()


def _check_energy(model, energy: float) -> None:
    if energy <= model.value(0.0):
        raise ValueError(
            f"energy {energy} is below the potential minimum "
            f"{model.value(0.0)}: no classical region")


def _shoot(model, grid: Grid, energy: float, seed: float):
    """Integrate one trajectory; return (samples, wall mismatch, max |psi|)."""
    v, wall = _potential_samples(model, grid)
    h = grid.h
    n = grid.n
    a = (1.0 + (h * h / 6.0) * (energy - v)).tolist()
    s1 = _wall_solution(h, energy, wall)
    s2 = _wall_solution(2.0 * h, energy, wall)

    vals = [0.0] * (n + 1)
    vals[1] = seed
    vals[2] = seed * s2 / s1
    pkm1, pk = vals[1], vals[2]
    mx = max(abs(pkm1), abs(pk))
    for k in range(2, n):
        pkp1 = ((12.0 - 10.0 * a[k]) * pk - a[k - 1] * pkm1) / a[k + 1]
        ap = abs(pkp1)
        if ap > mx:
            mx = ap
            if ap > _RESCALE_LIMIT:
                inv = 1.0 / ap
                pk *= inv
                pkp1 *= inv
                for i in range(k + 1):
                    vals[i] *= inv
                mx = 1.0
        vals[k + 1] = pkp1
        pkm1, pk = pk, pkp1

    # Dirichlet condition at the right wall: the last two interior samples
    # must be proportional to the local wall solution.
    mismatch = vals[n - 1] * s2 - vals[n - 2] * s1
    return np.array(vals), mismatch, mx


def integrate(model, grid: Grid, energy: float,
              seed: float = DEFAULT_SEED) -> ShootingTrajectory:
    """Shoot one trajectory from the left wall at the given energy.

    Args:
        model: potential with ``value`` and ``wall_expansion``.
        grid: uniform grid (needs at least 100 segments).
        energy: dimensionless trial energy, above the well minimum.
        seed: value of the first interior sample (positive).

    Returns:
        ShootingTrajectory with psi_0 = 0 and psi_1 = seed.
    """
    if seed <= 0.0:
        raise ValueError("seed must be positive")
    if grid.n < _MIN_SOLVER_SEGMENTS:
        raise ValueError(f"solver grids need >= {_MIN_SOLVER_SEGMENTS} segments")
    _check_energy(model, energy)
    samples, _, _ = _shoot(model, grid, energy, seed)
    return ShootingTrajectory(samples=samples, terminal=float(samples[-1]),
                              nodes=_count_nodes(samples))


def _count_nodes(samples: np.ndarray) -> int:
    interior = samples[1:-1]
    nz = interior[interior != 0.0]
    if len(nz) < 2:
        return 0
    return int(np.count_nonzero(nz[:-1] * nz[1:] < 0.0))


def terminal_mismatch(model, grid: Grid, energy: float,
                      seed: float = DEFAULT_SEED) -> float:
    """Shooting objective F(eps): wall-solution mismatch at the right wall,
    normalized by max |psi|.  Continuous in energy, changes sign at each
    eigenvalue."""
    if seed <= 0.0:
        raise ValueError("seed must be positive")
    if grid.n < _MIN_SOLVER_SEGMENTS:
        raise ValueError(f"solver grids need >= {_MIN_SOLVER_SEGMENTS} segments")
    _check_energy(model, energy)
    _, mismatch, mx = _shoot(model, grid, energy, seed)
    return mismatch / mx


def _mismatch_batch(model, grid: Grid, energies: np.ndarray,
                    seed: float = DEFAULT_SEED) -> np.ndarray:
    """Vectorized terminal_mismatch over an array of energies (used by the
    spectrum scan; one pass over the grid advances every trajectory)."""
    v, wall = _potential_samples(model, grid)
    h = grid.h
    n = grid.n
    e = np.asarray(energies, dtype=float)
    beta = ((h * h / 6.0) * v).tolist()
    alpha = 1.0 + (h * h / 6.0) * e
    twelve = 12.0 - 10.0 * alpha
    s1 = _wall_solution(h, e, wall)
    s2 = _wall_solution(2.0 * h, e, wall)

    pkm1 = np.full_like(e, seed)
    pk = seed * s2 / s1
    mx = np.maximum(np.abs(pkm1), np.abs(pk))
    for k in range(2, n - 1):
        pkp1 = ((twelve + 10.0 * beta[k]) * pk
                - (alpha - beta[k - 1]) * pkm1) / (alpha - beta[k + 1])
        pkm1, pk = pk, pkp1
        np.maximum(mx, np.abs(pk), out=mx)
    # pk, pkm1 are now psi_{N-1}, psi_{N-2}
    return (pk * s2 - pkm1 * s1) / mx


def find_eigenvalue(model, grid: Grid, bracket: tuple[float, float],
                    tol: float = 1e-10) -> float:
    """Bisect terminal_mismatch down to a bracket of width <= tol."""
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"invalid bracket {bracket}")
    f_lo = terminal_mismatch(model, grid, lo)
    f_hi = terminal_mismatch(model, grid, hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo < 0.0) == (f_hi < 0.0):
        raise NoSignChangeError(
            f"terminal mismatch has the same sign at both ends of {bracket}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = terminal_mismatch(model, grid, mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def normalize(samples: np.ndarray, grid: Grid) -> np.ndarray:
    """Scale samples to unit L2 norm (composite Simpson); flip sign so the
    first sample clear of rounding noise is positive."""
    samples = np.asarray(samples, dtype=float)
    norm_sq = simpson(samples * samples, dx=grid.h)
    if norm_sq <= 0.0:
        raise ValueError("cannot normalize the zero function")
    out = samples / np.sqrt(norm_sq)
    peak = np.max(np.abs(out))
    for val in out:
        if abs(val) > 1e-12 * peak:
            if val < 0.0:
                out = -out
            break
    return out


def _parity(samples: np.ndarray) -> str:
    rev = samples[::-1]
    even_dev = np.max(np.abs(samples - rev))
    odd_dev = np.max(np.abs(samples + rev))
    return "even" if even_dev <= odd_dev else "odd"


def solution_from_samples(level: int, energy: float, samples: np.ndarray,
                          grid: Grid, method: str) -> EigenSolution:
    """Normalize raw samples and package them with measured node count
    and parity."""
    wf = normalize(samples, grid)
    return EigenSolution(level=level, energy=energy, wavefunction=wf,
                         node_count=_count_nodes(wf), parity=_parity(wf),
                         method=method)


def solve_spectrum(model, grid: Grid, n_levels: int,
                   scan_step: float = 1e-3, tol: float = 1e-10,
                   seed: float = DEFAULT_SEED,
                   energy_max: float | None = None) -> list[EigenSolution]:
    """Find the lowest ``n_levels`` bound states by scan + bisection.

    Scans the terminal mismatch upward from just above the well minimum in
    steps of ``scan_step``, brackets the first ``n_levels`` sign changes,
    refines each by bisection to ``tol``, then integrates and normalizes
    the eigenfunctions.

    Raises:
        NoSignChangeError: if fewer than ``n_levels`` sign changes exist
            below ``energy_max``.
    """
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")
    if grid.n < _MIN_SOLVER_SEGMENTS:
        raise ValueError(f"solver grids need >= {_MIN_SOLVER_SEGMENTS} segments")
    minimum = model.value(0.0)
    if energy_max is None:
        energy_max = minimum + (n_levels + 2) ** 2 / 8.0
    brackets: list[tuple[float, float]] = []
    e_lo = minimum + scan_step
    f_lo = None
    chunk = 512
    while len(brackets) < n_levels and e_lo < energy_max:
        energies = e_lo + scan_step * np.arange(chunk + 1)
        energies = energies[energies <= energy_max + scan_step]
        if len(energies) < 2:
            break
        f = _mismatch_batch(model, grid, energies, seed)
        if f_lo is not None and (f[0] < 0.0) != (f_lo < 0.0):
            brackets.append((e_lo - scan_step, e_lo))
        flips = np.nonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0.0)[0]
        for i in flips:
            if len(brackets) < n_levels:
                brackets.append((float(energies[i]), float(energies[i + 1])))
        f_lo = f[-1]
        e_lo = float(energies[-1])
    if len(brackets) < n_levels:
        raise NoSignChangeError(
            f"only {len(brackets)} levels found below energy {energy_max}; "
            "raise energy_max or lower n_levels")

    solutions = []
    for bracket in brackets:
        try:
            energy = find_eigenvalue(model, grid, bracket, tol=tol)
        except NoSignChangeError:
            # an eigenvalue sitting on a scan node leaves noise-level
            # mismatch values at the bracket edge; one step of widening
            # restores decisive signs (levels are far wider apart)
            widened = (max(bracket[0] - scan_step, minimum + 1e-12),
                       bracket[1] + scan_step)
            energy = find_eigenvalue(model, grid, widened, tol=tol)
        samples, _, _ = _shoot(model, grid, energy, seed)
        solutions.append((energy, samples))
    solutions.sort(key=lambda pair: pair[0])
    return [solution_from_samples(i, energy, samples, grid, "numerov")
            for i, (energy, samples) in enumerate(solutions)]
