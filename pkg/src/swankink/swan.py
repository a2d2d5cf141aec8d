"""Depth and differential Swan conductors of Z/p Kummer covers of a disk."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .elimination import EliminationResult, eliminate
from .errors import (ConnectednessNotEstablished, Inconclusive,
                     InternalInconsistency, NoConvergence, PrecisionLoss, UnsupportedSlope)
from .residue import Differential, RationalFunction
from .series import LaurentSeries
from .valued import INF, FieldConfig, LocalFieldElement, extend_field

W = LocalFieldElement

EXACT = "exact-dg"
LOG = "logarithmic-dg/g"
ZERO = "zero-depth"

MAX_STEPS = 64


def log_depth(p) -> Fraction:
    return Fraction(p, p - 1)


@dataclass(frozen=True)
class SwanValue:
    depth: Fraction
    form: Differential | None
    regime: str
    p: int

    def __post_init__(self):
        top = log_depth(self.p)
        if not 0 <= self.depth <= top:
            raise InternalInconsistency(f"depth {self.depth} outside [0, {top}]")
        if (self.form is not None) != (self.depth > 0):
            raise InternalInconsistency("form must be present exactly when depth > 0")
        if (self.regime == LOG) != (self.depth == top):
            raise InternalInconsistency("regime tag disagrees with the depth")
        if self.form is not None and self.form.is_zero():
            raise InternalInconsistency("zero differential attached to positive depth")

    @classmethod
    def zero(cls, p):
        return cls(Fraction(0), None, ZERO, p)

    @property
    def left_slope(self):
        if self.form is None:
            return None
        return self.form.ord_at("inf") + 1

    @property
    def right_slope(self):
        if self.form is None:
            return None
        return -self.form.ord_at("0") - 1

    def to_json(self):
        from .io import form_json, rational_json
        return {"depth": rational_json(self.depth),
                "form": None if self.form is None else form_json(self.form),
                "regime": self.regime}


def _value(depth, form, p):
    depth = Fraction(depth)
    if depth <= 0:
        return SwanValue.zero(p)
    regime = LOG if depth == log_depth(p) else EXACT
    return SwanValue(depth, form, regime, p)


# covers

@dataclass
class CoverSpec:
    cfg: FieldConfig
    alpha0: int = 0
    branch: list = field(default_factory=list)  # [(LocalFieldElement, alpha)]
    unit_u: LaurentSeries | None = None
    genus: int = 0
    outside_bound: int = 0
    r0: Fraction | None = None
    connected: bool | None = None

    def __post_init__(self):
        p = self.cfg.p
        if not 0 <= self.alpha0 < p:
            raise ValueError("alpha0 must lie in 0..p-1")
        xs = []
        for x, a in self.branch:
            if not 1 <= a < p:
                raise ValueError("branch multiplicities must lie in 1..p-1")
            if x.is_zero() or x.valuation() <= 0:
                raise ValueError("branch points need positive valuation")
            if any(x.equals(y) for y in xs):
                raise ValueError("branch points must be distinct")
            xs.append(x)
        if self.unit_u is None:
            self.unit_u = LaurentSeries.one(self.cfg)
        U = self.unit_u
        if any(d < 0 for d in U.terms) or U.tail(-1) is not None or not U.coeff(0).equals(1):
            raise ValueError("unit part must be 1 + (terms in T)")
        for d, c in U.terms.items():
            if not c.is_zero() and c.valuation() < 0:
                raise ValueError("unit part must have integral coefficients")
        vmin = min((x.valuation() for x, _ in self.branch), default=None)
        if self.r0 is None:
            if vmin is None:
                raise ValueError("r0 is required when there are no branch points")
            self.r0 = vmin
        self.r0 = Fraction(self.r0)
        if self.r0 <= 0:
            raise ValueError("r0 must be positive")
        if vmin is not None and vmin < self.r0:
            raise ValueError("every branch point must satisfy v(x) >= r0")

    @property
    def p(self):
        return self.cfg.p

    def g_tilde(self) -> LaurentSeries:
        cfg = self.cfg
        out = LaurentSeries.one(cfg)
        for x, a in self.branch:
            out = out * LaurentSeries(cfg, {0: W.one(cfg), -1: -x}) ** a
        return out

    def f_tilde_order_at_zero(self) -> int:
        return self.alpha0 - sum(a for _, a in self.branch)

    def branch_count(self, r) -> int:
        """|B[r]|: branch points in the closed disk v(T) >= r."""
        r = Fraction(r)
        n = sum(1 for x, _ in self.branch if x.valuation() >= r)
        if self.f_tilde_order_at_zero() % self.p:
            n += 1
        return n

    def branch_count_open(self, r) -> int:
        """|B(r)|: branch points with v > r."""
        r = Fraction(r)
        n = sum(1 for x, _ in self.branch if x.valuation() > r)
        if self.f_tilde_order_at_zero() % self.p:
            n += 1
        return n

    @property
    def m(self) -> int:
        return self.branch_count(self.r0) - 1

    @property
    def s_u(self) -> int:
        p = self.p
        bound = Fraction(2 * p * self.genus, p - 1) + self.outside_bound - 1
        return max(1, floor(bound) + 1)

    @classmethod
    def genuine(cls, cfg, branch, alpha0=0, outside=(), r0=None):
        """Cover with U = prod (1 - y T)^beta over points 1/y outside the disk (genus 0)."""
        U = LaurentSeries.one(cfg)
        for y, b in outside:
            U = U * LaurentSeries(cfg, {0: W.one(cfg), 1: -y}) ** b
        # order of F*U at infinity is -(alpha0 + sum beta)
        at_inf = alpha0 + sum(b for _, b in outside)
        d = len(outside) + (1 if at_inf % cfg.p else 0)
        return cls(cfg, alpha0, list(branch), U, 0, d, r0)

    def power(self, m: int) -> "CoverSpec":
        """Kummer representative F^m reduced to the normal form (alpha's mod p)."""
        p = self.p
        if m % p == 0:
            raise ValueError("m must be prime to p")
        branch = [(x, (a * m) % p) for x, a in self.branch]
        # (1 - xT^-1)^(a m) = (1 - xT^-1)^(a m mod p) * (p-th power): drop the p-th power
        return CoverSpec(self.cfg, (self.alpha0 * m) % p, branch, self.unit_u ** m,
                         self.genus, self.outside_bound, self.r0, self.connected)


# the direct reduction

def _embed_all(cfg, mult, series):
    if mult == 1:
        return cfg, series
    cfg2, emb = extend_field(cfg, mult, 1)
    return cfg2, [s.embed(emb) for s in series]


def direct_value(G: LaurentSeries, r) -> SwanValue:
    """delta and omega of the Kummer class of G at radius r by iterated p-th power removal."""
    r = Fraction(r)
    cfg = G.cfg
    p = cfg.p
    top = log_depth(p)
    k = (cfg.e * r).denominator
    cfg, (G,) = _embed_all(cfg, k, [G])
    w0 = G.gauss_valuation(r)
    if w0 != 0:
        shift = w0 * cfg.e
        if shift.denominator != 1:
            cfg, (G,) = _embed_all(cfg, shift.denominator, [G])
            shift = w0 * cfg.e
        G = G.scale(W.pi(cfg, -int(shift)))
    g = G.reduce(r)
    if not g.is_pth_power():
        return _value(top, Differential.dlog(g), p)
    H = None
    R = G
    for _ in range(MAX_STEPS):
        if H is not None:
            R = G - H.pth_power()
        if H is not None and R.is_exact_zero():
            return SwanValue.zero(p)
        if H is not None:
            w = R.gauss_valuation(r)
            if w >= top:
                return SwanValue.zero(p)
            rho = R.reduce(r)
            if not rho.is_pth_power():
                # G/H^p = 1 + R/H^p and [H]^p = g
                return _value(top - w, Differential(Differential.d(rho).coeff / g), p)
        else:
            w = Fraction(0)
            rho = g
        need = (cfg.e * w / p).denominator
        if need != 1:
            cfg, parts = _embed_all(cfg, need, [G] + ([H] if H is not None else []) + [R])
            G, R = parts[0], parts[-1]
            H = parts[1] if H is not None else None
        c = rho.pth_root()
        L = c.laurent()
        if L is None:
            raise InternalInconsistency("reduction of a Laurent polynomial is not Laurent")
        terms = {}
        for jdeg, coef in L.items():
            expo = cfg.e * (w / p - jdeg * r)
            terms[jdeg] = W.from_residue(cfg, coef).mul_pi(int(expo))
        C = LaurentSeries(cfg, terms)
        H = C if H is None else H + C
    raise NoConvergence("p-th power removal did not terminate")


def combine(v1: SwanValue, v2: SwanValue, fallback=None) -> SwanValue:
    """Depth/form of a product from its factors."""
    p = v1.p
    if v1.depth > v2.depth:
        return v1
    if v2.depth > v1.depth:
        return v2
    if v1.depth == 0:
        return v1
    form = v1.form + v2.form
    if form.is_zero():
        if fallback is None:
            raise Inconclusive("forms cancel and no fallback is available")
        return fallback()
    return _value(v1.depth, form, p)


def _check_radius(cover, r, allow_zero=False):
    r = Fraction(r)
    if r < 0 or (r == 0 and not allow_zero) or r > cover.r0:
        raise ValueError(f"radius {r} outside (0, r0={cover.r0}]")
    return r


def swan_at(cover: CoverSpec, r, method: str = "direct", allow_zero: bool = False) -> SwanValue:
    r = _check_radius(cover, r, allow_zero)
    p = cover.p
    if cover.alpha0 % p:
        return _alpha0_value(cover, r)
    if method == "split":
        return swan_split(cover, r)
    if method != "direct":
        raise ValueError(f"unknown method {method}")
    vU = direct_value(cover.unit_u, r)
    vG = direct_value(cover.g_tilde(), r)
    return combine(vU, vG, lambda: direct_value(cover.unit_u * cover.g_tilde(), r))


def _alpha0_value(cover, r):
    cfg = cover.cfg
    k = (cfg.e * r).denominator
    cfg2, (U, G) = _embed_all(cfg, k, [cover.unit_u, cover.g_tilde()])
    g = U.reduce(r) * G.reduce(r) * RationalFunction.from_laurent(cfg.F, {cover.alpha0: 1})
    form = Differential.dlog(g)
    if form.is_zero():
        raise InternalInconsistency("logarithmic form vanished for alpha0 != 0")
    return _value(log_depth(cover.p), form, cover.p)


# elimination route

def _truncated_value(rem: LaurentSeries, s: int, side: int, r) -> SwanValue:
    p = rem.cfg.p
    A = rem.truncate(s, side)
    A = LaurentSeries(A.cfg, {d: c for d, c in A.terms.items() if d != 0})
    if A.is_exact_zero() or all(c.is_zero() for c in A.terms.values()):
        return SwanValue.zero(p)
    k = (A.cfg.e * Fraction(r)).denominator
    _, (A,) = _embed_all(A.cfg, k, [A])
    w = A.gauss_valuation(r)
    if w >= log_depth(p):
        return SwanValue.zero(p)
    form = Differential.d(A.reduce(r))
    if form.is_zero():
        raise InternalInconsistency("truncated remainder has an exact reduction")
    return _value(log_depth(p) - w, form, p)


def eliminate_cover(cover: CoverSpec, auto_extend: bool = True):
    """(elimination of U with s_U, elimination of G~ with s = max(m, 1))."""
    eU = eliminate(cover.unit_u, cover.s_u, 1, auto_extend=auto_extend)
    s = max(cover.m, 1)
    eF = eliminate(cover.g_tilde(), s, -1, r0=_scale_r0(cover), auto_extend=auto_extend)
    return eU, eF


def _scale_r0(cover):
    e = cover.cfg.e
    return Fraction(floor(cover.r0 * e), e)


def swan_split(cover: CoverSpec, r) -> SwanValue:
    r = Fraction(r)
    if r >= cover.r0:
        raise ValueError("the truncation route needs r < r0")
    eU, eF = eliminate_cover(cover)
    vU = _truncated_value(eU.remainder, eU.s, 1, r)
    vG = _truncated_value(eF.remainder, eF.s, -1, r)
    return combine(vU, vG, lambda: direct_value(cover.unit_u * cover.g_tilde(), r))


def swan_power_twist(value: SwanValue, m: int) -> SwanValue:
    if m % value.p == 0:
        raise ValueError("twist exponent must be prime to p")
    if value.form is None:
        return value
    return SwanValue(value.depth, value.form.scale(m), value.regime, value.p)


def slope_divisibility_guard(value: SwanValue, slope: int) -> bool:
    if value.depth == 0:
        raise ValueError("the guard needs positive depth")
    if slope % value.p == 0:
        if value.depth != log_depth(value.p) or slope != 0:
            raise InternalInconsistency(
                f"slope {slope} divisible by p at depth {value.depth}")
    return True


# mu and lambda

def mu(elimU: EliminationResult, elimF: EliminationResult, s_u: int, m: int):
    p = (elimU.cfg or elimF.cfg).p

    def cv(i):
        res = elimF if i > 0 else elimU
        v = res.cValuations.get(i, INF)
        return v

    cm = cv(m)
    if cm is None:
        raise PrecisionLoss(f"c_{m} is zero only to working precision")
    if cm == INF:
        return INF
    best = Fraction(0)
    for i in range(-s_u, m):
        if i % p == 0:
            continue
        ci = cv(i)
        if ci is None:
            raise PrecisionLoss(f"c_{i} is zero only to working precision")
        if ci == INF:
            continue
        best = max(best, Fraction(cm - ci, m - i))
    return best


def lambda_closed_form(cover: CoverSpec, elims=None):
    p, r0 = cover.p, cover.r0
    N = cover.branch_count(r0)
    m = N - 1
    if cover.alpha0 % p:
        return Fraction(0) if m == 0 else r0
    if m == 0:
        raise UnsupportedSlope("m = 0 with alpha0 = 0 is excluded")
    if N > 1 and N % p == 1:
        return r0
    if m % p == 0:
        raise UnsupportedSlope(f"p divides m = {m}")
    if m == -1 and not cover.connected:
        raise ConnectednessNotEstablished("no branch points: connectedness must be asserted")
    if -cover.s_u >= m:
        raise UnsupportedSlope("s_U too small for m")
    if elims is None:
        eU = eliminate(cover.unit_u, cover.s_u, 1, auto_extend=True)
        eF = eliminate(cover.g_tilde(), max(m, 1), -1, r0=_scale_r0(cover), auto_extend=True)
    else:
        eU, eF = elims
    mval = mu(eU, eF, cover.s_u, m)
    if m > 0:
        cm = eF.cValuations.get(m, INF)
        if mval == INF:
            return r0
        return min(r0, max(mval, (cm - log_depth(p)) / m))
    if mval == INF:
        return r0
    return min(r0, mval)
