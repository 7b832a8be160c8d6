"""Closed-form limit predictions, residual profiles, and extrapolation."""

import cmath
import json
import math

import numpy as np
import pytest

from arccheb.asymptotics import (
    PredictionReport,
    alpha_constant,
    limit_residual_modulus,
    predict_lemniscate_limit,
    predict_pointwise_limit,
    predict_widom_limit,
    richardson_extrapolate,
    szego_widom_bounds,
)
from arccheb.errors import IllConditionedFit
from arccheb.lemniscate import LemniscateSpec
from arccheb.minimax import build_grid, solve_minimax
from arccheb.potential import ArcDomain, green_inf, kernel_k, mu_log_integral
from arccheb.weights import UNIT_WEIGHT, WeightSpec

HALF = ArcDomain(math.pi / 2)


def test_alpha_constant():
    assert alpha_constant(HALF) == pytest.approx(
        2 * math.cos(math.pi / 8) ** 2, abs=1e-15
    )
    assert alpha_constant(HALF) == pytest.approx(1.7071067811865475, abs=1e-14)
    near_full = ArcDomain(math.pi - 1e-9, relax_guard=True)
    assert alpha_constant(near_full) == pytest.approx(1.0, abs=1e-8)


def test_szego_widom_bounds():
    lo, hi = szego_widom_bounds(HALF, UNIT_WEIGHT)
    assert (lo, hi) == (pytest.approx(1.0, abs=1e-9),
                        pytest.approx(2.0, abs=1e-9))
    w2 = WeightSpec(constant=2.0, powers=((0.5 + 0j, 1.0),))
    lo, hi = szego_widom_bounds(HALF, w2)
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    assert lo == pytest.approx(golden, abs=1e-8)
    assert hi == pytest.approx(2.0 * golden, abs=1e-8)
    lo, hi = szego_widom_bounds(HALF, WeightSpec(constant=3.5))
    assert (lo, hi) == (pytest.approx(3.5), pytest.approx(7.0))


def test_predict_widom_limit():
    rep = predict_widom_limit(HALF, UNIT_WEIGHT)
    assert rep.kind == "widom_limit"
    assert rep.value == pytest.approx(1.70710678, abs=1e-7)
    assert rep.lower_bound <= rep.value <= rep.upper_bound
    w_half = WeightSpec(powers=((1.0 + 0j, 0.5),))
    rep = predict_widom_limit(HALF, w_half)
    want = 1.7071067811865475 * math.sin(math.pi / 4) ** 0.5
    assert rep.value == pytest.approx(want, abs=1e-8)
    assert rep.value == pytest.approx(1.4355000, abs=1e-6)
    assert set(rep.components) == {"capacity", "alpha_constant",
                                   "log_integral"}


def test_predict_pointwise_limit():
    rep = predict_pointwise_limit(HALF, UNIT_WEIGHT, 2.0)
    assert rep.kind == "pointwise_limit"
    assert rep.value == pytest.approx(1.31624, abs=1e-4)
    # u0 = -1: lambda is real there, k = 1/2, so the unit-weight value is 2
    rep = predict_pointwise_limit(HALF, UNIT_WEIGHT, -1.0)
    assert rep.value == pytest.approx(2.0, abs=1e-9)
    wend = WeightSpec(powers=((cmath.exp(1j * HALF.alpha), 1.0),))
    rep = predict_pointwise_limit(HALF, wend, 0.0)
    assert rep.value == pytest.approx(1.20711, abs=1e-4)


def test_pointwise_limit_consistency_at_infinity():
    # as u0 runs off to infinity the pointwise limit approaches the
    # monic one, 2cos^2(a/4) exp(log-integral)
    w2 = WeightSpec(constant=2.0, powers=((0.5 + 0j, 1.0),))
    want = alpha_constant(HALF) * math.exp(mu_log_integral(w2, HALF))
    got = predict_pointwise_limit(HALF, w2, 1e6).value
    assert abs(got - want) / want < 1e-3


def test_predict_lemniscate_limit():
    rep = predict_lemniscate_limit(LemniscateSpec(2, 1.0, math.pi / 2, 1))
    assert rep.kind == "lemniscate_limit"
    assert rep.value == pytest.approx(1.70710678, abs=1e-7)  # c(1, a) = 1
    rep = predict_lemniscate_limit(LemniscateSpec(2, 2.0, math.pi / 2, 1))
    assert rep.value == pytest.approx(
        1.7071067811865475 * math.sqrt(1.1441228056353687), abs=1e-10
    )
    assert rep.value == pytest.approx(1.82608, abs=1e-4)
    assert rep.lower_bound <= rep.value <= rep.upper_bound
    rep = predict_lemniscate_limit(LemniscateSpec(3, 0.5, 1.3, 0))
    assert rep.value == pytest.approx(alpha_constant(ArcDomain(1.3)))


def test_report_json_and_validation():
    rep = predict_widom_limit(HALF, UNIT_WEIGHT)
    doc = json.loads(rep.to_json())
    assert doc["kind"] == "widom_limit"
    assert doc["value"] == rep.value
    with pytest.raises(ValueError):
        PredictionReport(kind="widom_limit", value=5.0,
                         lower_bound=1.0, upper_bound=2.0)
    with pytest.raises(ValueError):
        PredictionReport(kind="widom_limit", value=math.nan,
                         lower_bound=0.0, upper_bound=1.0)


def test_residual_modulus_diagonal():
    # at u = u0 the limit collapses to k(u0,u0) times the outer modulus,
    # the reciprocal of the pointwise norm limit
    for u0 in (0.0, 0.3 + 0.2j, -0.5j):
        got = limit_residual_modulus(HALF, UNIT_WEIGHT, u0, u0)
        want = 1.0 / predict_pointwise_limit(HALF, UNIT_WEIGHT, u0).value
        assert got == pytest.approx(want, rel=1e-9)


def test_residual_modulus_domain_guard():
    with pytest.raises(ValueError):
        limit_residual_modulus(HALF, UNIT_WEIGHT, 2.0, 1.5)


def test_residual_modulus_positive_continuous():
    vals = [
        limit_residual_modulus(HALF, UNIT_WEIGHT, 3.0 + t * 1e-4, 0.0)
        for t in range(3)
    ]
    assert all(v > 0 for v in vals)
    assert abs(vals[2] - vals[0]) < 1e-3


def test_residual_modulus_matches_solver_profile():
    # e^{-n g(u)} |R_n(u, 0)| at n = 32 sits within a couple percent of the
    # predicted locally uniform limit
    u0 = 0.0
    n = 32
    grid = build_grid(HALF, max(16 * n + 64, 1024))
    sol = solve_minimax(grid, n, point=u0)
    for u in (2.5 + 0j, -3.0 + 0j, 1.0 + 2.0j):
        lim = limit_residual_modulus(HALF, UNIT_WEIGHT, u, u0)
        prof = math.exp(-n * green_inf(u, HALF)) * abs(sol(u)) / sol.norm
        assert abs(prof - lim) / lim < 0.02


def test_richardson_exact_constant():
    assert richardson_extrapolate([(8, 2.0), (16, 2.0), (32, 2.0)]) == (
        pytest.approx(2.0, abs=1e-12)
    )


def test_richardson_exact_model():
    seq = [(n, 1.0 + 1.0 / n) for n in (8, 16, 32, 64)]
    assert richardson_extrapolate(seq) == pytest.approx(1.0, abs=1e-10)
    limit, resid = richardson_extrapolate(seq, with_residual=True)
    assert limit == pytest.approx(1.0, abs=1e-10)
    assert resid < 1e-12


def test_richardson_guards():
    with pytest.raises(IllConditionedFit):
        richardson_extrapolate([(8, 1.0), (16, 1.0)])
    with pytest.raises(IllConditionedFit):
        richardson_extrapolate([(16, 1.0), (8, 1.0), (32, 1.0)])
    with pytest.raises(IllConditionedFit):
        # n-range far too narrow: the 1/n column is nearly constant
        richardson_extrapolate(
            [(10**7, 1.0), (10**7 + 1, 1.0), (10**7 + 2, 1.0)]
        )


def test_kernel_prediction_identity():
    # the pointwise unit-weight prediction is exactly 1/k(u0, u0)
    for u0 in (2.0, -1.0, 0.5 + 1.0j):
        rep = predict_pointwise_limit(HALF, UNIT_WEIGHT, u0)
        assert rep.value == pytest.approx(
            1.0 / kernel_k(u0, u0, HALF).real, rel=1e-9
        )
