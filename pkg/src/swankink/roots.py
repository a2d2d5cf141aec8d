"""Roots of univariate polynomials over W via Newton polygons and Hensel lifting."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import ExtensionRequired, PrecisionLoss
from .valued import LocalFieldElement

MAX_DEPTH = 64


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def poly_eval(coeffs, x):
    acc = LocalFieldElement.zero(x.cfg)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_deriv(coeffs):
    return [c * n for n, c in enumerate(coeffs)][1:]


def taylor_shift(coeffs, a, scale):
    """Coefficients of Q(a + scale*w) in w."""
    n = len(coeffs)
    out = list(coeffs)
    # repeated synthetic division by (z - a)
    for i in range(n):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + a * out[k + 1]
    s = LocalFieldElement.one(a.cfg)
    for i in range(n):
        out[i] = out[i] * s
        s = s * scale
    return out


def newton_segments(points):
    """Lower convex hull of [(i, v)] as a list of (i, k) index pairs."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return [(hull[t], hull[t + 1]) for t in range(len(hull) - 1)]


def _lift_simple(coeffs, z):
    cfg = z.cfg
    target = cfg.e * cfg.precision
    d = poly_deriv(coeffs)
    for _ in range(target.bit_length() + 4):
        val = poly_eval(coeffs, z)
        if val.is_zero():
            break
        z = z - val / poly_eval(d, z)
    return z


def _roots(coeffs, vmin, depth):
    """(roots, e_mult, f_mult, complete) for roots of pi-valuation > vmin."""
    coeffs = _trim(coeffs)
    if not coeffs:
        raise PrecisionLoss("polynomial vanishes at working precision")
    if depth > MAX_DEPTH:
        raise PrecisionLoss("multiple-root refinement exhausted the precision")
    cfg = coeffs[0].cfg
    F = cfg.F
    roots, e_need, f_need, complete = [], 1, 1, True
    low = 0
    while low < len(coeffs) - 1 and coeffs[low].is_zero():
        low += 1
    if low:
        roots.append(LocalFieldElement.zero(cfg))
    coeffs = coeffs[low:]
    pts = [(i, c.j) for i, c in enumerate(coeffs) if not c.is_zero()]
    for (i, vi), (k, vk) in newton_segments(pts):
        ell = Fraction(vi - vk, k - i)
        if ell <= vmin:
            continue
        if ell.denominator != 1:
            e_need = lcm(e_need, ell.denominator)
            complete = False
            continue
        ell = int(ell)
        scaled = [c.mul_pi(ell * n) for n, c in enumerate(coeffs)]
        base = min(c.j for c in scaled[i:k + 1] if not c.is_zero())
        scaled = [c.mul_pi(-base) for c in scaled]
        resid = F.poly.trim(
            (c.leading_residue() if (not c.is_zero() and c.j == 0) else 0)
            for c in scaled[i:k + 1])
        for g, mult in F.poly.factor(resid):
            if len(g) > 2:
                f_need = lcm(f_need, len(g) - 1)
                complete = False
                continue
            rbar = F.neg(g[0])
            rho = LocalFieldElement.from_residue(cfg, rbar)
            if mult == 1:
                z = _lift_simple(scaled, rho)
                roots.append(z.mul_pi(ell))
                continue
            shifted = taylor_shift(scaled, rho, LocalFieldElement.pi(cfg))
            sub, e2, f2, ok = _roots(shifted, -1, depth + 1)
            e_need, f_need = lcm(e_need, e2), lcm(f_need, f2)
            complete = complete and ok
            pi = LocalFieldElement.pi(cfg)
            for w in sub:
                roots.append((rho + pi * w).mul_pi(ell))
    return roots, e_need, f_need, complete


def find_roots(coeffs, degree_bound=None):
    """All roots in W of sum coeffs[n] x^n, sorted deterministically.

    Raises ExtensionRequired (carrying the roots found) when some roots need a
    ramified or unramified extension of W.
    """
    coeffs = _trim(coeffs)
    if not coeffs:
        raise PrecisionLoss("polynomial vanishes at working precision")
    if degree_bound is not None and len(coeffs) - 1 > degree_bound:
        raise ValueError("polynomial degree exceeds the bound")
    roots, e_need, f_need, complete = _roots(coeffs, Fraction(-10 ** 9), 0)
    uniq = []
    for r in sorted(roots, key=lambda x: x.sort_key()):
        if not any(r.equals(s) for s in uniq):
            uniq.append(r)
    if not complete:
        raise ExtensionRequired(
            f"{len(coeffs) - 1 - len(uniq)} root(s) need an extension (e x{e_need}, f x{f_need})",
            e_mult=e_need, f_mult=f_need, roots=uniq)
    return uniq
