import pytest

from swankink.errors import InternalInconsistency, NotAPthPower
from swankink.finite_field import FiniteField
from swankink.residue import INF_PLACE, ZERO_PLACE, Differential, RationalFunction

F3 = FiniteField(3)
t = RationalFunction.t(F3)


def lf(terms):
    return RationalFunction.from_laurent(F3, terms)


def test_pth_power_predicate():
    assert (t ** 3 + t ** 6).is_pth_power()
    assert not (t ** 2).is_pth_power()
    assert not lf({-2: 2}).is_pth_power()


def test_pth_root():
    assert (t ** 3 + t ** 6).pth_root() == t + t ** 2
    assert RationalFunction.const(F3, 1).pth_root() == 1
    assert (t ** 6 / (t + 1) ** 3).pth_root() == t ** 2 / (t + 1)
    with pytest.raises(NotAPthPower):
        (t ** 2).pth_root()


def test_orders():
    w = Differential(t.inverse())
    assert (w.ord_at(ZERO_PLACE), w.ord_at(INF_PLACE)) == (-1, -1)
    w = Differential(lf({-3: 2}))
    assert (w.ord_at(ZERO_PLACE), w.ord_at(INF_PLACE)) == (-3, 1)
    w = Differential(RationalFunction.const(F3, 1))
    assert (w.ord_at(ZERO_PLACE), w.ord_at(INF_PLACE)) == (0, -2)


@pytest.mark.parametrize("g", [t.inverse(), lf({-3: 2}), RationalFunction.const(F3, 1),
                               (t + 1) / (t ** 2 + 1) ** 2, t ** 4 / (t + 2)])
def test_degree_check(g):
    assert Differential(g).degree_check() == -2


def test_degree_check_is_a_real_check():
    class Broken(Differential):
        def finite_places(self):
            return []
    with pytest.raises(InternalInconsistency):
        Broken(t.inverse() * t.inverse()).degree_check()


def test_field_ops_and_scaling():
    g = lf({-2: 1, 1: 2})
    assert g * g.inverse() == 1
    assert (g - g).is_zero()
    w = Differential.d(g)
    assert w.scale(2) == Differential(w.coeff * 2)
    assert w.scale(3).is_zero()
    assert Differential.dlog(t) == Differential(t.inverse())
    assert Differential(lf({-3: 2})).to_str() == "(2*t^-3) dt"
