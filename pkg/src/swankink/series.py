"""Laurent series over W with tail certificates, Gauss valuations and reductions.

A series is a finite map from signed T-degrees to coefficients plus, on each
side, an optional TailCertificate bounding what was omitted.  The certificate
(direction, sigma, after, offset) says: the true series differs from the stored
one only in degrees d on that side with |d| > after, and those corrections have
valuation >= sigma*|d| + offset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExtensionRequired, PrecisionLoss, SeriesMismatch, TailUnbounded
from .residue import RationalFunction
from .valued import INF, FieldConfig, LocalFieldElement

W = LocalFieldElement


@dataclass(frozen=True)
class TailCertificate:
    direction: int  # +1: tail in positive T-degrees, -1: tail in T^-1
    sigma: Fraction
    after: int = 0
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise ValueError("tail direction must be +1 or -1")
        object.__setattr__(self, "sigma", Fraction(self.sigma))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def bound_at(self, r: Fraction):
        """Lower bound for v_r of the omitted part, or None when unbounded."""
        slope = self.sigma - r if self.direction < 0 else self.sigma + r
        if slope < 0:
            return None
        return slope * (self.after + 1) + self.offset

    def to_json(self):
        return {"direction": "+inf" if self.direction > 0 else "-inf",
                "sigma": _q(self.sigma), "after": self.after, "offset": _q(self.offset)}


def _q(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _merge_tails(t1, t2):
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    return TailCertificate(t1.direction, min(t1.sigma, t2.sigma), max(t1.after, t2.after),
                           min(t1.offset, t2.offset))


class LaurentSeries:
    __slots__ = ("cfg", "terms", "tails")

    def __init__(self, cfg: FieldConfig, terms=None, tails=()):
        self.cfg = cfg
        clean = {}
        for d, c in (terms or {}).items():
            if isinstance(c, int):
                c = W.from_int(cfg, c)
            if not c.is_exact_zero():
                clean[int(d)] = c
        self.terms = clean
        tmap = {}
        for t in tails:
            if t is not None:
                tmap[t.direction] = _merge_tails(tmap.get(t.direction), t)
        self.tails = tuple(tmap[k] for k in sorted(tmap))

    # constructors
    @classmethod
    def one(cls, cfg):
        return cls(cfg, {0: W.one(cfg)})

    @classmethod
    def monomial(cls, cfg, c, d):
        return cls(cfg, {d: c})

    @classmethod
    def from_tinv_poly(cls, cfg, coeffs):
        """sum coeffs[k] T^-k."""
        return cls(cfg, {-k: c for k, c in enumerate(coeffs)})

    @classmethod
    def from_t_poly(cls, cfg, coeffs):
        return cls(cfg, {k: c for k, c in enumerate(coeffs)})

    # access
    def tail(self, direction):
        for t in self.tails:
            if t.direction == direction:
                return t
        return None

    def coeff(self, d) -> LocalFieldElement:
        return self.terms.get(d, W.zero(self.cfg))

    def degrees(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.tails and all(c.is_zero() for c in self.terms.values())

    def is_exact_zero(self):
        return not self.tails and not self.terms

    def support_side(self):
        """+1, -1, 0 (constant only) or None (two-sided)."""
        pos = any(d > 0 for d in self.terms) or self.tail(1) is not None
        neg = any(d < 0 for d in self.terms) or self.tail(-1) is not None
        if pos and neg:
            return None
        return 1 if pos else (-1 if neg else 0)

    def __repr__(self):
        parts = [f"{self.terms[d]!r}*T^{d}" for d in sorted(self.terms)]
        return "LaurentSeries(" + " + ".join(parts or ["0"]) + ")"

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.cfg.key() == other.cfg.key() and self.tails == other.tails
                and self.terms.keys() == other.terms.keys()
                and all(self.terms[d] == other.terms[d] for d in self.terms))

    # arithmetic
    def _lift(self, other):
        if isinstance(other, LaurentSeries):
            if other.cfg.key() != self.cfg.key():
                raise ValueError("series over different fields")
            return other
        if isinstance(other, int):
            return LaurentSeries(self.cfg, {0: W.from_int(self.cfg, other)})
        if isinstance(other, LocalFieldElement):
            return LaurentSeries(self.cfg, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return LaurentSeries(self.cfg, terms, self.tails + other.tails)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.cfg, {d: -c for d, c in self.terms.items()}, self.tails)

    def __sub__(self, other):
        other = self._lift(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if isinstance(c, int):
            c = W.from_int(self.cfg, c)
        tails = ()
        if self.tails:
            if c.is_zero():
                tails = ()
            else:
                v = c.valuation()
                tails = tuple(TailCertificate(t.direction, t.sigma, t.after, t.offset + v)
                              for t in self.tails)
        return LaurentSeries(self.cfg, {d: a * c for d, a in self.terms.items()}, tails)

    def shift(self, k: int):
        """Multiply by T^k (tails must be absent)."""
        if self.tails:
            raise SeriesMismatch("cannot shift a series with a tail certificate")
        return LaurentSeries(self.cfg, {d + k: c for d, c in self.terms.items()})

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = {}
        for d1, a in self.terms.items():
            for d2, b in other.terms.items():
                d = d1 + d2
                c = a * b
                terms[d] = terms[d] + c if d in terms else c
        tails = []
        for A, B in ((self, other), (other, self)):
            for t in B.tails:
                tails.append(_tail_times_finite(t, A))
        for t1 in self.tails:
            for t2 in other.tails:
                if t1.direction != t2.direction:
                    raise SeriesMismatch("product of opposite-side tails is not certified")
                tails.append(TailCertificate(t1.direction, min(t1.sigma, t2.sigma),
                                             t1.after + t2.after + 1, t1.offset + t2.offset))
        return LaurentSeries(self.cfg, terms, tails)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = LaurentSeries.one(self.cfg)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def pth_power(self):
        return self ** self.cfg.p

    def truncate(self, s: int, side: int):
        """Keep degrees 0..s*side (constant included); tails are dropped."""
        if side > 0:
            keep = {d: c for d, c in self.terms.items() if 0 <= d <= s}
        else:
            keep = {d: c for d, c in self.terms.items() if -s <= d <= 0}
        return LaurentSeries(self.cfg, keep)

    def embed(self, emb):
        return LaurentSeries(emb.dst, {d: emb(c) for d, c in self.terms.items()}, self.tails)

    def without_tails(self):
        return LaurentSeries(self.cfg, self.terms)

    def drop_zeros(self):
        """Remove stored coefficients that are zero to precision (keeps their bound as data)."""
        return LaurentSeries(self.cfg, {d: c for d, c in self.terms.items() if not c.is_zero()},
                             self.tails)

    # Gauss valuation and reduction
    def gauss_valuation(self, r) -> Fraction:
        r = Fraction(r)
        vals = []
        for d, c in self.terms.items():
            if c.is_zero():
                if c.rho is None:
                    continue
                raise PrecisionLoss(f"coefficient of T^{d} is zero to precision")
            vals.append(c.valuation() + d * r)
        if not vals:
            raise PrecisionLoss("series is zero at working precision")
        w = min(vals)
        for t in self.tails:
            b = t.bound_at(r)
            if b is None or b <= w:
                raise TailUnbounded(f"tail certificate does not control v_r at r={r}")
        return w

    def argmin(self, r):
        r = Fraction(r)
        w = self.gauss_valuation(r)
        return w, sorted(d for d, c in self.terms.items()
                         if not c.is_zero() and c.valuation() + d * r == w)

    def reduce(self, r) -> RationalFunction:
        r = Fraction(r)
        er = self.cfg.e * r
        if er.denominator != 1:
            raise ExtensionRequired(f"radius {r} needs e*r integral", e_mult=er.denominator)
        _, ds = self.argmin(r)
        F = self.cfg.F
        return RationalFunction.from_laurent(F, {d: self.terms[d].leading_residue() for d in ds})

    def to_json(self):
        out = {"terms": {str(d): self.terms[d].to_json() for d in sorted(self.terms)}}
        if self.tails:
            out["tails"] = [t.to_json() for t in self.tails]
        return out


def _tail_times_finite(t: TailCertificate, A: LaurentSeries) -> TailCertificate:
    s = t.direction
    if any(d * s < 0 for d in A.terms) or A.tail(-s) is not None:
        raise SeriesMismatch("tail multiplied by terms on the opposite side")
    if not A.terms:
        return t
    shift = min(c.min_valuation() - t.sigma * abs(d) for d, c in A.terms.items())
    if shift == INF:
        return t
    reach = max(abs(d) for d in A.terms)
    return TailCertificate(s, t.sigma, t.after + reach, t.offset + shift)
