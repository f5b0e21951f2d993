"""Parameter grids shared by the test modules."""

import math

import numpy as np

NU_GRID = (1.0, 2.0, 5.5)
TAU_GRID = (0.05, 0.3, 0.7)
R_GRID = (1.0, 3.0)

# 16 points of the closed unit disc: 8 on the circle, 8 inside
DISC_POINTS = np.concatenate(
    [np.exp(2j * np.pi * np.arange(8) / 8), 0.6 * np.exp(2j * np.pi * (np.arange(8) + 0.5) / 8)]
)


def ci_grid():
    cells = []
    for nu in NU_GRID:
        for tau in TAU_GRID:
            for R in R_GRID:
                for m in range(min(4, math.floor(nu * R * R - 0.5)) + 1):
                    cells.append((nu, tau, m, R))
    return cells


def decomposition_grid():
    return [(nu, m, tau) for nu in (2.0, 3.5, 5.5) for m in (1, 2, 3) if 2 * nu > 2 * m for tau in (0.05, 0.3, 0.6)]
