"""Weight specification, evaluation, and JSON serialization checks."""

import cmath
import math

import numpy as np
import pytest

from arccheb.errors import OutsideArc, SingularNode
from arccheb.potential import ArcDomain
from arccheb.weights import (
    UNIT_WEIGHT,
    WeightSpec,
    eval_weight,
    lemniscate_reduced_weight,
)

HALF = ArcDomain(math.pi / 2)
RNG = np.random.default_rng(7)


def test_unit_weight():
    assert UNIT_WEIGHT.is_unit
    pts = np.exp(1j * RNG.uniform(-HALF.alpha, HALF.alpha, 50))
    assert np.all(UNIT_WEIGHT.values(pts) == 1.0)
    assert eval_weight(UNIT_WEIGHT, cmath.exp(0.3j), HALF) == 1.0


def test_power_weight_values():
    # |r zeta - 1|^{1/2} written as r^{1/2} |zeta - 1/r|^{1/2}
    w_r1 = WeightSpec(powers=((1.0 + 0j, 0.5),))
    assert eval_weight(w_r1, 1.0, HALF) == 0.0
    w_r2 = WeightSpec(constant=math.sqrt(2.0), powers=((0.5 + 0j, 0.5),))
    assert eval_weight(w_r2, 1.0, HALF) == pytest.approx(1.0, abs=1e-14)
    # against the direct formula on random arc points
    pts = np.exp(1j * RNG.uniform(-HALF.alpha, HALF.alpha, 100))
    direct = np.abs(2.0 * pts - 1.0) ** 0.5
    assert np.max(np.abs(w_r2.values(pts) - direct)) < 1e-13


def test_log_values_match():
    w = WeightSpec(constant=3.0, powers=((0.5 + 0j, 0.5), (2.0 + 0j, -1.0)))
    pts = np.exp(1j * RNG.uniform(-HALF.alpha, HALF.alpha, 60))
    assert np.max(
        np.abs(np.exp(w.log_values(pts)) - w.values(pts))
    ) < 1e-13


def test_table_weight():
    tab = ((-math.pi / 2, 1.0), (0.0, 2.0), (math.pi / 2, 1.0))
    w = WeightSpec(table=tab, bound=4.0)
    assert eval_weight(w, 1.0, HALF) == pytest.approx(2.0)
    assert eval_weight(w, cmath.exp(1j * math.pi / 4), HALF) == (
        pytest.approx(1.5)
    )
    with pytest.raises(ValueError):
        WeightSpec(table=((0.0, 1.0), (0.0, 2.0)))  # not increasing
    with pytest.raises(ValueError):
        WeightSpec(table=tab, bound=1.5)  # value 2 outside [1/1.5, 1.5]


def test_validation():
    with pytest.raises(ValueError):
        WeightSpec(constant=0.0)
    with pytest.raises(ValueError):
        WeightSpec(constant=-1.0)


def test_singular_nodes():
    w = WeightSpec(powers=((1.0 + 0j, -0.5),))
    assert w.singular_on_arc(HALF) == (1.0 + 0j,)
    with pytest.raises(SingularNode):
        w.values(np.array([1.0 + 0j]))
    # pole off the arc is fine
    w_off = WeightSpec(powers=((2.0 + 0j, -0.5),))
    assert w_off.singular_on_arc(HALF) == ()
    assert np.isfinite(w_off.values(np.array([1.0 + 0j])))


def test_eval_weight_range_checks():
    with pytest.raises(OutsideArc):
        eval_weight(UNIT_WEIGHT, 2.0, HALF)
    with pytest.raises(OutsideArc):
        eval_weight(UNIT_WEIGHT, cmath.exp(2.0j), HALF)  # angle > alpha


def test_json_roundtrip():
    w = WeightSpec(
        constant=1.5,
        powers=((0.5 + 0.25j, 0.5), (1.0 + 0j, 2.0)),
        table=((-1.0, 1.0), (0.5, 3.0), (1.0, 1.0)),
        bound=5.0,
    )
    back = WeightSpec.from_json(w.to_json())
    assert back == w
    pts = np.exp(1j * RNG.uniform(-1.0, 1.0, 40))
    assert np.array_equal(back.values(pts), w.values(pts))
    with pytest.raises(ValueError):
        WeightSpec.from_json("{}")


def test_scaled():
    w = WeightSpec(powers=((0.5 + 0j, 1.0),))
    pts = np.exp(1j * RNG.uniform(-1.0, 1.0, 20))
    assert np.allclose(w.scaled(3.0).values(pts), 3.0 * w.values(pts))


def test_lemniscate_reduced_weight():
    assert lemniscate_reduced_weight(5, 2.0, 0) is UNIT_WEIGHT
    w = lemniscate_reduced_weight(2, 1.0, 1)
    assert w.constant == 1.0
    assert w.powers == ((1.0 + 0j, 0.5),)
    w = lemniscate_reduced_weight(2, 2.0, 1)
    assert w.constant == pytest.approx(math.sqrt(2.0))
    assert w.powers == ((0.5 + 0j, 0.5),)
    with pytest.raises(ValueError):
        lemniscate_reduced_weight(2, 2.0, 2)
    with pytest.raises(ValueError):
        lemniscate_reduced_weight(2, -1.0, 1)
