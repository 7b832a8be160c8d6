"""Lemniscatic arcs {z : z^m + 1 on the scaled arc} and the exact symmetry
reduction of their Chebyshev problems to weighted problems on the arc."""

from dataclasses import dataclass
import cmath
import json
import math

import numpy as np

from .errors import WrongNormalization
from .minimax import (
    MONIC,
    build_grid,
    build_lemniscate_grid,
    solve_minimax,
    widom_factor,
)
from .potential import ArcDomain
from .weights import lemniscate_reduced_weight


@dataclass(frozen=True)
class LemniscateSpec:
    """Parameters of the lemniscatic arc and the residue class l of the
    degrees under study."""

    m: int
    r: float
    alpha: float
    l: int = 0

    def __post_init__(self):
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError("m must be a positive integer")
        if self.r <= 0:
            raise ValueError("r must be positive")
        if not (0 < self.alpha < math.pi):
            raise ValueError("alpha must lie in (0, pi)")
        if not (0 <= self.l < self.m):
            raise ValueError("l must satisfy 0 <= l < m")

    @property
    def connected(self):
        return abs(self.r - 1.0) < 1e-12

    def domain(self):
        return ArcDomain(self.alpha)


def capacity_lemniscate(spec):
    """(r sin(alpha/2))^(1/m)."""
    return (spec.r * math.sin(spec.alpha / 2.0)) ** (1.0 / spec.m)


def reduce(spec, n):
    """Reduced arc problem for the degree n*m+l polynomial on the
    lemniscatic arc: (arc degree, reduced weight, norm scale r^n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    weight = lemniscate_reduced_weight(spec.m, spec.r, spec.l)
    return n, weight, spec.r**n


def reconstruct_poly(arc_solution, spec, n):
    """Evaluator of the lemniscate polynomial assembled from the reduced arc
    solution: z -> z^l r^n T((z^m + 1)/r)."""
    if arc_solution.normalization != MONIC:
        raise WrongNormalization("reduction requires a monic arc solution")
    if arc_solution.degree != n:
        raise ValueError("arc solution degree does not match n")
    scale = spec.r**n

    def evaluate(z):
        z = complex(z)
        zeta = (z**spec.m + 1.0) / spec.r
        return z**spec.l * scale * arc_solution(zeta)

    return evaluate


def direct_vs_reduced(spec, n, grid_size=None, **solver_kwargs):
    """Solve the lemniscate problem directly and via the arc reduction on
    matched grids; the two norms agree exactly in exact arithmetic."""
    degree = n * spec.m + spec.l
    if grid_size is None:
        grid_size = max(16 * degree + 64, 1024)

    lem_grid = build_lemniscate_grid(spec, grid_size)
    direct = solve_minimax(lem_grid, degree, **solver_kwargs)

    arc_degree, weight, scale = reduce(spec, n)
    arc_grid = build_grid(spec.domain(), grid_size, weight=weight)
    reduced = solve_minimax(arc_grid, arc_degree, **solver_kwargs)

    reduced_norm = scale * reduced.norm
    gap = abs(direct.norm - reduced_norm) / max(direct.norm, reduced_norm)
    cap = capacity_lemniscate(spec)
    record = {
        "m": spec.m,
        "r": spec.r,
        "alpha": spec.alpha,
        "l": spec.l,
        "n": n,
        "degree": degree,
        "direct_norm": direct.norm,
        "reduced_norm": reduced_norm,
        "scale": scale,
        "gap": gap,
        "widom_direct": widom_factor(direct, cap),
        "widom_predicted": reduced_norm / cap**degree,
        "near_singular": abs(spec.r - 1.0) < 1e-3 and not spec.connected,
    }
    return record, direct, reduced


def comparison_json(record):
    return json.dumps(record)


def rotation_symmetry_defect(solution, grid, spec):
    """Max defect of |T(e^{2 pi i/m} z)| == |T(z)| over the grid points,
    relative to the norm; zero for the true extremal polynomial."""
    rot = cmath.exp(2j * math.pi / spec.m)
    defect = 0.0
    for z, v in zip(grid.points, solution.grid_values):
        defect = max(defect, abs(abs(solution(rot * z)) - abs(v)))
    return defect / solution.norm
