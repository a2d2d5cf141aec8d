from fractions import Fraction as Q

import numpy as np
import pytest

from swankink import _kernels
from swankink.oracle import default_ramification, max_vr, oracle_depth, product_coeffs
from swankink.swan import CoverSpec, swan_at
from swankink.valued import FieldConfig, LocalFieldElement as W

BACKENDS = ["numpy", "python"] + (["numba"] if _kernels.HAVE_NUMBA else [])


def test_product_coeffs():
    assert product_coeffs([]) == [1]
    assert product_coeffs([2, 3]) == [1, -5, 6]


def test_default_ramification():
    for p, r in ((2, Q(3, 8)), (3, Q(1, 2)), (5, Q(2, 3))):
        E = default_ramification(p, r)
        assert (r * E).denominator == 1 and E % (p - 1) == 0


@pytest.mark.parametrize("r,depth", [(Q(1, 8), 0), (Q(1, 2), Q(1, 2)), (Q(3, 4), 1)])
def test_known_depths(r, depth):
    assert oracle_depth(product_coeffs([3, 24]), 3, r) == depth


def test_matches_engine():
    cfg = FieldConfig(2)
    for xs in ([4, 8], [2, 12], [6, 10]):
        cov = CoverSpec(cfg, 0, [(W.from_int(cfg, x), 1) for x in xs])
        for r in (Q(1, 4), Q(1, 2), Q(3, 4)):
            assert oracle_depth(product_coeffs(xs), 2, r) == swan_at(cov, r).depth, (xs, r)


def test_backends_agree():
    rng = np.random.default_rng(7)
    p, E, K, D = 3, 6, 9, 3
    mod = p ** K
    F = np.zeros((D, E), dtype=np.int64)
    for d, a in enumerate(product_coeffs([3, 24])):
        F[d, 0] = a % mod
    Hs = rng.integers(0, p * p, size=(40, D, E), dtype=np.int64)
    results = [_kernels.vr_batch(Hs, F, p, E, K, 3, 9, backend=b) for b in BACKENDS]
    for other in results[1:]:
        assert np.array_equal(results[0], other)


@pytest.mark.parametrize("backend", BACKENDS)
def test_max_vr_backend(backend):
    w, evals = max_vr(product_coeffs([3, 24]), 3, Q(1, 2), backend=backend)
    assert Q(3, 2) - w == Q(1, 2) and evals > 0


def test_unknown_backend():
    with pytest.raises(ValueError):
        _kernels.vr_batch(np.zeros((1, 1, 2), dtype=np.int64), np.zeros((1, 2), dtype=np.int64),
                          2, 2, 4, 1, 4, backend="gpu")
