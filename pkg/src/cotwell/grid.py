"""Uniform symmetric grids on [-pi, pi]."""

from dataclasses import dataclass
from functools import lru_cache
from math import pi

import numpy as np


@lru_cache(maxsize=64)
def _mirror_nodes(n: int) -> np.ndarray:
    # Build the right half and mirror it so x[n-k] == -x[k] holds exactly
    # in floating point (x[n//2] == 0.0, endpoints == +-pi).
    right = np.linspace(0.0, pi, n // 2 + 1)
    nodes = np.concatenate((-right[:0:-1], right))
    nodes.setflags(write=False)
    return nodes


@dataclass(frozen=True)
class Grid:
    """Uniform discretization of [-pi, pi] into ``n`` segments (n even).

    Nodes are x_k = -pi + h*k for k = 0..n with h = 2*pi/n.  The node
    array is mirror-symmetric to the last bit, so x = 0 is a node and
    parity checks against reversed samples are exact.
    """

    n: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError(f"segment count must be even and >= 2, got {self.n}")

    @property
    def n_points(self) -> int:
        return self.n + 1

    @property
    def h(self) -> float:
        return 2.0 * pi / self.n

    @property
    def nodes(self) -> np.ndarray:
        return _mirror_nodes(self.n)
