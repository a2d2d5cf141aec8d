from fractions import Fraction as Q

import pytest

from swankink.errors import InternalInconsistency
from swankink.oracle import oracle_depth, product_coeffs
from swankink.residue import INF_PLACE, ZERO_PLACE, Differential, RationalFunction
from swankink.swan import (CoverSpec, SwanValue, eliminate_cover, lambda_closed_form, log_depth, mu,
                           slope_divisibility_guard, swan_at, swan_power_twist, swan_split)
from swankink.valued import FieldConfig, LocalFieldElement as W

C3 = FieldConfig(3)


def cover(xs, alpha0=0, cfg=C3):
    return CoverSpec(cfg, alpha0, [(W.from_int(cfg, x), 1) for x in xs])


def test_worked_value():
    v = swan_at(cover([3, 24]), Q(1, 2))
    assert v.depth == Q(1, 2)
    assert v.form.to_str() == "(2*t^-3) dt"
    assert v.regime == "exact-dg"
    assert (v.left_slope, v.right_slope) == (v.form.ord_at(INF_PLACE) + 1, -v.form.ord_at(ZERO_PLACE) - 1)
    assert v.left_slope == 2


def test_worked_zero_depth():
    v = swan_at(cover([3, 24]), Q(1, 8))
    assert v.depth == 0 and v.form is None and v.regime == "zero-depth"


def test_alpha0_constant_depth():
    c = CoverSpec.genuine(C3, [(W.from_int(C3, 3), 1), (W.from_int(C3, 24), 1)], alpha0=1)
    for r in (Q(1, 8), Q(1, 2), Q(1)):
        v = swan_at(c, r)
        assert v.depth == Q(3, 2) and v.regime == "logarithmic-dg/g"


def test_split_route_agrees():
    c = cover([3, 24])
    for r in (Q(1, 8), Q(3, 8), Q(1, 2), Q(3, 4)):
        a, b = swan_at(c, r), swan_split(c, r)
        assert a.depth == b.depth and a.form == b.form


@pytest.mark.parametrize("r", [Q(1, 8), Q(1, 4), Q(1, 2), Q(3, 4), Q(1)])
def test_oracle_p3(r):
    assert swan_at(cover([3, 24]), r).depth == oracle_depth(product_coeffs([3, 24]), 3, r)


def test_twist():
    v = swan_at(cover([3, 24]), Q(1, 2))
    assert swan_power_twist(v, 2).form.to_str() == "(t^-3) dt"
    assert swan_power_twist(v, 1) == v
    z = SwanValue.zero(3)
    assert swan_power_twist(z, 2) == z
    with pytest.raises(ValueError):
        swan_power_twist(v, 3)


def test_divisibility_guard():
    t_inv = Differential(RationalFunction.t(C3.F).inverse())
    log = SwanValue(log_depth(3), t_inv, "logarithmic-dg/g", 3)
    assert slope_divisibility_guard(log, 0)
    half = SwanValue(Q(1, 2), t_inv, "exact-dg", 3)
    with pytest.raises(InternalInconsistency):
        slope_divisibility_guard(half, 3)
    assert slope_divisibility_guard(half, 2)


def test_mu_examples():
    eU, eF = eliminate_cover(cover([3, 24]))
    assert mu(eU, eF, 1, 2) == 0
    eU, eF = eliminate_cover(cover([3, 12]))
    assert mu(eU, eF, 1, 2) == 1


def test_lambda_closed_form():
    assert lambda_closed_form(cover([3, 24])) == Q(1, 4)
    assert lambda_closed_form(cover([3, 12])) == 1
    # alpha0 != 0 and only T = 0 branched: m = 0
    assert lambda_closed_form(CoverSpec(C3, 1, [], r0=1)) == 0


def test_cover_validation():
    with pytest.raises(ValueError):
        cover([3, 3])
    with pytest.raises(ValueError):
        cover([1])
    with pytest.raises(ValueError):
        CoverSpec(C3, 3, [])
    c = cover([3, 24])
    assert c.r0 == 1 and c.m == 2
    assert c.branch_count(Q(1, 2)) == 3
    assert c.power(2).power(2).alpha0 == c.alpha0
