"""Lemniscatic arcs: capacity, symmetry reduction, and the exact
direct-vs-reduced norm identity."""

import cmath
import json
import math

import numpy as np
import pytest

from arccheb.errors import WrongNormalization
from arccheb.lemniscate import (
    LemniscateSpec,
    capacity_lemniscate,
    comparison_json,
    direct_vs_reduced,
    reconstruct_poly,
    reduce,
    rotation_symmetry_defect,
)
from arccheb.minimax import build_grid, build_lemniscate_grid, solve_minimax
from arccheb.weights import UNIT_WEIGHT

ALPHA = math.pi / 2


def test_spec_validation():
    with pytest.raises(ValueError):
        LemniscateSpec(0, 1.0, ALPHA, 0)
    with pytest.raises(ValueError):
        LemniscateSpec(2, -1.0, ALPHA, 0)
    with pytest.raises(ValueError):
        LemniscateSpec(2, 1.0, ALPHA, 2)
    with pytest.raises(ValueError):
        LemniscateSpec(2, 1.0, 4.0, 0)
    assert LemniscateSpec(2, 1.0, ALPHA).connected
    assert not LemniscateSpec(2, 1.5, ALPHA).connected


def test_capacity():
    assert capacity_lemniscate(LemniscateSpec(1, 1.0, ALPHA)) == (
        pytest.approx(math.sin(ALPHA / 2), abs=1e-15)
    )
    assert capacity_lemniscate(LemniscateSpec(2, 1.0, ALPHA)) == (
        pytest.approx(0.8408964152537145, abs=1e-14)
    )
    assert capacity_lemniscate(LemniscateSpec(2, 2.0, ALPHA)) == (
        pytest.approx(1.189207115002721, abs=1e-14)
    )


def test_reduce():
    deg, w, scale = reduce(LemniscateSpec(2, 1.0, ALPHA, 0), 5)
    assert (deg, scale) == (5, 1.0) and w is UNIT_WEIGHT
    deg, w, scale = reduce(LemniscateSpec(2, 1.0, ALPHA, 1), 3)
    assert (deg, scale) == (3, 1.0)
    assert w.powers == ((1.0 + 0j, 0.5),) and w.constant == 1.0
    deg, w, scale = reduce(LemniscateSpec(3, 2.0, ALPHA, 2), 4)
    assert deg == 4 and scale == 16.0
    assert w.constant == pytest.approx(2.0 ** (2.0 / 3.0))
    assert w.powers == ((0.5 + 0j, pytest.approx(2.0 / 3.0)),)
    with pytest.raises(ValueError):
        reduce(LemniscateSpec(2, 1.0, ALPHA, 0), -1)


def test_reconstruct_constant():
    spec = LemniscateSpec(2, 1.0, ALPHA, 0)
    grid = build_grid(spec.domain(), 128)
    arc_sol = solve_minimax(grid, 0)
    poly = reconstruct_poly(arc_sol, spec, 0)
    for z in (0.0, 0.5 + 0.5j, 1.2j):
        assert poly(z) == pytest.approx(1.0, abs=1e-14)


def test_reconstruct_z_and_sup():
    # n=0, l=1, m=2, r=1: the polynomial is z itself, and its sup over the
    # lemniscatic arc equals max |zeta - 1|^{1/2} = (2 sin(alpha/2))^{1/2}
    spec = LemniscateSpec(2, 1.0, ALPHA, 1)
    grid = build_grid(spec.domain(), 256)
    arc_sol = solve_minimax(grid, 0)
    poly = reconstruct_poly(arc_sol, spec, 0)
    for z in (0.3 + 0.1j, 1.0j, -0.7):
        assert poly(z) == pytest.approx(z, abs=1e-14)
    lem = build_lemniscate_grid(spec, 4096)
    sup = max(abs(poly(z)) for z in lem.points)
    assert sup == pytest.approx(math.sqrt(2 * math.sin(ALPHA / 2)), abs=1e-4)


def test_reconstruct_rotation_identity():
    spec = LemniscateSpec(3, 2.0, 1.0, 2)
    grid = build_grid(spec.domain(), 256, weight=reduce(spec, 2)[1])
    arc_sol = solve_minimax(grid, 2)
    poly = reconstruct_poly(arc_sol, spec, 2)
    rot = cmath.exp(2j * math.pi / 3)
    for z in (0.9 + 0.2j, -0.4 + 1.1j):
        assert poly(rot * z) == pytest.approx(rot**2 * poly(z), abs=1e-10)


def test_reconstruct_guards():
    spec = LemniscateSpec(2, 1.0, ALPHA, 0)
    grid = build_grid(spec.domain(), 128)
    pointed = solve_minimax(grid, 1, point=2.0)
    with pytest.raises(WrongNormalization):
        reconstruct_poly(pointed, spec, 1)
    monic = solve_minimax(grid, 1)
    with pytest.raises(ValueError):
        reconstruct_poly(monic, spec, 2)


def test_direct_vs_reduced_trivial():
    record, *_ = direct_vs_reduced(LemniscateSpec(1, 1.0, ALPHA, 0), 2)
    assert record["gap"] < 1e-9  # identical problems


def test_direct_vs_reduced_connected():
    record, *_ = direct_vs_reduced(LemniscateSpec(2, 1.0, ALPHA, 1), 2)
    assert record["degree"] == 5
    assert record["gap"] < 1e-6
    assert not record["near_singular"]


def test_direct_vs_reduced_scale():
    record, direct, reduced_sol = direct_vs_reduced(
        LemniscateSpec(2, 2.0, ALPHA, 0), 3
    )
    assert record["scale"] == 8.0
    assert record["direct_norm"] == pytest.approx(
        8.0 * reduced_sol.norm, rel=1e-6
    )
    assert record["gap"] < 1e-6


def test_near_singular_flag():
    record, *_ = direct_vs_reduced(
        LemniscateSpec(2, 1.0005, ALPHA, 0), 1, grid_size=256
    )
    assert record["near_singular"]


def test_comparison_json_roundtrip():
    record, *_ = direct_vs_reduced(LemniscateSpec(2, 1.0, ALPHA, 0), 1)
    back = json.loads(comparison_json(record))
    assert back == record


def test_rotation_symmetry_defect():
    spec = LemniscateSpec(2, 2.0, ALPHA, 0)
    grid = build_lemniscate_grid(spec, 1024)
    sol = solve_minimax(grid, 4)
    # degree = 0 mod m, so |T| is rotation invariant at the optimum
    assert rotation_symmetry_defect(sol, grid, spec) < 1e-6
