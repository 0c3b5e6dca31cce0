"""Bound states of the symmetric cotangent well, four ways.

The well v(x) = v0*(1 - x*cot x)/x^2 on [-pi, pi] is solved by a
closed-form ground state, semiclassical quantization, stationary
perturbation theory around its oscillator core, and Numerov shooting.
"""

from .analytic import AnalyticGroundState, ground_state, ode_residual
from .grid import Grid
from .numerov import (EigenSolution, ShootingTrajectory, find_eigenvalue,
                      integrate, normalize, numerov_step, solve_spectrum,
                      terminal_mismatch)
from .potential import BernoulliTable, PotentialModel, bernoulli
from .report import ComparisonTable, build_table, convergence_study, figure_panels
from .spt import SptLevel, second_order, total_energy
from .wkb import WkbLevel, action_integral, closed_form_energy, quantize

__version__ = "0.1.0"

__all__ = [
    "AnalyticGroundState",
    "BernoulliTable",
    "ComparisonTable",
    "EigenSolution",
    "Grid",
    "PotentialModel",
    "ShootingTrajectory",
    "SptLevel",
    "WkbLevel",
    "action_integral",
    "bernoulli",
    "build_table",
    "closed_form_energy",
    "convergence_study",
    "figure_panels",
    "find_eigenvalue",
    "ground_state",
    "integrate",
    "normalize",
    "numerov_step",
    "ode_residual",
    "quantize",
    "second_order",
    "solve_spectrum",
    "terminal_mismatch",
    "total_energy",
]
