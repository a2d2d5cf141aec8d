"""Brute-force depth oracle: search correctors H digit by digit.

For F = sum_d a_d T^-d with integer coefficients, the oracle computes
max over H of v_r(F - H^p) where H = sum_j h_j T^-j, j < len(F), ranges over
all elements of Z_p[pi], pi^E = p, written with digits 0..p-1.  Digits are
decided level by level in units of v_r; a partial corrector whose value is
already below what any completion could disturb is final, so the search is
exhaustive without listing every digit string.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import ceil

import numpy as np

from ._kernels import vr_batch
from .errors import NoConvergence

MAX_FRONTIER = 200000


def default_ramification(p: int, r) -> int:
    r = Fraction(r)
    E = p * p * r.denominator
    while E % (p - 1):
        E *= 2
    return E


def max_vr(coeffs, p: int, r, E: int | None = None, backend=None):
    """(max over H of v_r(F - H^p) capped at p/(p-1), number of evaluations)."""
    r = Fraction(r)
    if E is None:
        E = default_ramification(p, r)
    rE = r * E
    capE = Fraction(p * E, p - 1)
    if rE.denominator != 1 or capE.denominator != 1:
        raise ValueError("E must make r*E and p*E/(p-1) integral")
    rE, capE = int(rE), int(capE)
    D = len(coeffs)
    size = max(p * (D - 1) + 1, D)
    K = ceil(Fraction(p, p - 1) + size * r) + 2
    mod = p ** K
    F = np.zeros((D, E), dtype=np.int64)
    for d, a in enumerate(coeffs):
        F[d, 0] = a % mod
    frontier = np.zeros((1, D, E), dtype=np.int64)
    best = -1
    evals = 0
    # root: H = 0, every digit still free (completions differ by v_r >= 0)
    level = -1
    values = vr_batch(frontier, F, p, E, K, rE, capE, backend)
    evals += 1
    while True:
        beta = min(E + level + 1, p * (level + 1))
        keep = []
        for n, v in enumerate(values):
            if v < beta:
                best = max(best, int(v))
            else:
                keep.append(n)
        if not keep:
            break
        if beta >= capE:
            best = capE
            break
        frontier = frontier[keep]
        level += 1
        frontier = _expand(frontier, level, p, E, rE, mod)
        if frontier.shape[0] > MAX_FRONTIER:
            raise NoConvergence("oracle frontier too large")
        values = vr_batch(frontier, F, p, E, K, rE, capE, backend)
        evals += frontier.shape[0]
    return Fraction(best, E), evals


def _expand(frontier, level, p, E, rE, mod):
    n, D, _ = frontier.shape
    choices = list(itertools.product(range(p), repeat=D))
    out = np.repeat(frontier, len(choices), axis=0)
    for c_idx, digits in enumerate(choices):
        rows = slice(c_idx, None, len(choices))
        for j, dgt in enumerate(digits):
            if dgt == 0:
                continue
            k = level + j * rE
            q, i = divmod(k, E)
            out[rows, j, i] = (out[rows, j, i] + dgt * pow(p, q, mod)) % mod
    return out


def oracle_depth(coeffs, p: int, r, E: int | None = None, backend=None) -> Fraction:
    """max(p/(p-1) - max_H v_r(F - H^p), 0)."""
    w, _ = max_vr(coeffs, p, r, E, backend)
    return max(Fraction(p, p - 1) - w, Fraction(0))


def product_coeffs(xs):
    """Coefficients of prod (1 - x T^-1) as a list in powers of T^-1."""
    out = [1]
    for x in xs:
        nxt = out + [0]
        for k in range(len(out)):
            nxt[k + 1] -= x * out[k]
        out = nxt
    return out
