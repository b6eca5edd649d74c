"""Total-variation Wasserstein JKO steps on uniform 2-D grids.

Arrays are indexed ``[j, i]`` (y, then x) and hold intensities, so the mass
of a cell is its value times ``grid.cell_area``.
"""

from ._tvw import (
    ConvergenceError,
    Grid,
    InvalidArgument,
    ball_energy,
    estimate_radius,
    floyd_steinberg,
    halpern_beta,
    make_grid,
    mass,
    optimal_radius,
    prox_tv,
    prox_w2,
    rasterize_ball,
    rof_nonneg,
    solve_tvw,
    tv_value,
    w2_concentric_balls,
    w2_entropic,
    w2_exact,
)

__all__ = [
    "ConvergenceError",
    "Grid",
    "InvalidArgument",
    "ball_energy",
    "estimate_radius",
    "floyd_steinberg",
    "halpern_beta",
    "make_grid",
    "mass",
    "optimal_radius",
    "prox_tv",
    "prox_w2",
    "rasterize_ball",
    "rof_nonneg",
    "solve_tvw",
    "tv_value",
    "w2_concentric_balls",
    "w2_entropic",
    "w2_exact",
]
