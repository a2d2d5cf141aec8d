import random

import pytest

from swankink.finite_field import FiniteField, is_prime


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("p,f", [(2, 1), (3, 1), (2, 3), (3, 2), (5, 2)])
def test_field_axioms(p, f):
    F = FiniteField(p, f)
    rng = random.Random(p * 10 + f)
    els = list(F.elements())
    assert len(els) == p ** f
    for _ in range(200):
        a, b, c = (rng.choice(els) for _ in range(3))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.sub(F.add(a, b), b) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.pth_root(F.frobenius(a)) == a
        assert F.pow(a, p ** f) == a


def test_rejects_composite():
    with pytest.raises(ValueError):
        FiniteField(4)


def test_poly_factor_roundtrip():
    F = FiniteField(3)
    R = F.poly
    rng = random.Random(1)
    for _ in range(30):
        a = R.monic(R.trim(tuple(rng.randrange(3) for _ in range(rng.randint(2, 7))) + (1,)))
        prod = (1,)
        for P, m in R.factor(a):
            assert R.is_irreducible(P)
            prod = R.mul(prod, R.pow(P, m))
        assert prod == a


def test_poly_roots_and_pth_powers():
    F = FiniteField(5)
    R = F.poly
    a = R.mul((1, 1), (3, 1))  # (t+1)(t+3)
    assert sorted(R.roots(a)) == [(2, 1), (4, 1)]  # (root, multiplicity)
    cube = R.pow((1, 1, 1), 5)
    assert R.is_pth_power(cube)
    assert R.pth_root(cube) == (1, 1, 1)
    assert not R.is_pth_power((0, 1))
