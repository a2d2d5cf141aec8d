"""Rational functions in t over F_q and differentials g(t) dt on the residue line."""

from __future__ import annotations

from .errors import InternalInconsistency, NotAPthPower
from .finite_field import FiniteField

ZERO_PLACE = "0"
INF_PLACE = "inf"


class RationalFunction:
    """num/den over F_q, stored reduced with den monic."""

    __slots__ = ("F", "num", "den")

    def __init__(self, F: FiniteField, num, den=(1,)):
        R = F.poly
        num, den = R.trim(num), R.trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (1,)
        else:
            g = R.gcd(num, den)
            if R.deg(g) > 0:
                num, den = R.exact_div(num, g), R.exact_div(den, g)
            lead = den[-1]
            if lead != 1:
                inv = F.inv(lead)
                num, den = R.scale(inv, num), R.scale(inv, den)
        self.F, self.num, self.den = F, num, den

    # constructors
    @classmethod
    def const(cls, F, c):
        return cls(F, (c,))

    @classmethod
    def t(cls, F):
        return cls(F, (0, 1))

    @classmethod
    def from_laurent(cls, F, terms):
        """Build from a dict {exponent: coefficient}; exponents may be negative."""
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return cls(F, ())
        low = min(terms)
        shift = -low if low < 0 else 0
        top = max(terms) + shift
        num = [0] * (top + 1)
        for k, v in terms.items():
            num[k + shift] = v
        return cls(F, num, (0,) * shift + (1,))

    # basics
    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalFunction.const(self.F, other)
        return (isinstance(other, RationalFunction) and self.F == other.F
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.F.p, self.F.f, self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.to_str()})"

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction.const(self.F, other % self.F.q if self.F.f > 1 else other % self.F.p)

    def __add__(self, other):
        o = self._coerce(other)
        R = self.F.poly
        return RationalFunction(self.F, R.add(R.mul(self.num, o.den), R.mul(o.num, self.den)),
                                R.mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.F, self.F.poly.neg(self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        R = self.F.poly
        return RationalFunction(self.F, R.mul(self.num, o.num), R.mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.F, self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        R = self.F.poly
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.F, R.pow(self.num, n), R.pow(self.den, n))

    def scale(self, c: int):
        return RationalFunction(self.F, self.F.poly.scale(c, self.num), self.den)

    # structure
    def is_pth_power(self) -> bool:
        R = self.F.poly
        return R.is_pth_power(self.num) and R.is_pth_power(self.den)

    def pth_root(self):
        if not self.is_pth_power():
            raise NotAPthPower(f"{self.to_str()} is not a p-th power")
        R = self.F.poly
        return RationalFunction(self.F, R.pth_root(self.num), R.pth_root(self.den))

    def derivative(self):
        R = self.F.poly
        n, d = self.num, self.den
        top = R.sub(R.mul(R.deriv(n), d), R.mul(n, R.deriv(d)))
        return RationalFunction(self.F, top, R.mul(d, d))

    def ord_zero(self) -> int:
        if self.is_zero():
            raise ValueError("order of the zero function")
        return _low(self.num) - _low(self.den)

    def ord_inf(self) -> int:
        """Order at t = infinity (as a function)."""
        if self.is_zero():
            raise ValueError("order of the zero function")
        return len(self.den) - len(self.num)

    def ord_poly(self, P) -> int:
        """Multiplicity of the monic irreducible P (num minus den)."""
        return _mult(self.F.poly, self.num, P) - _mult(self.F.poly, self.den, P)

    def laurent(self):
        """{exponent: coeff} when the denominator is a power of t, else None."""
        if any(self.den[:-1]):
            return None
        k = len(self.den) - 1
        return {i - k: c for i, c in enumerate(self.num) if c}

    def to_str(self):
        if self.is_zero():
            return "0"
        L = self.laurent()
        if L is not None:
            return _laurent_str(L)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def to_json(self):
        return {"num": list(self.num), "den": list(self.den)}


def _low(a):
    for i, c in enumerate(a):
        if c:
            return i
    raise ValueError("zero polynomial")


def _mult(R, a, P):
    if R.deg(P) == 1 and P[0] == 0:
        return _low(a)
    m = 0
    while True:
        q, r = R.divmod(a, P)
        if r:
            return m
        a, m = q, m + 1


def _term(c, k):
    if k == 0:
        return str(c)
    mono = "t" if k == 1 else f"t^{k}"
    return mono if c == 1 else f"{c}*{mono}"


def _laurent_str(L):
    return " + ".join(_term(L[k], k) for k in sorted(L, reverse=True)) or "0"


def _poly_str(a):
    return _laurent_str({i: c for i, c in enumerate(a) if c})


class Differential:
    """The form coeff * dt."""

    __slots__ = ("coeff",)

    def __init__(self, coeff: RationalFunction):
        self.coeff = coeff

    @property
    def F(self):
        return self.coeff.F

    @classmethod
    def d(cls, g: RationalFunction):
        return cls(g.derivative())

    @classmethod
    def dlog(cls, g: RationalFunction):
        return cls(g.derivative() / g)

    def is_zero(self):
        return self.coeff.is_zero()

    def __eq__(self, other):
        return isinstance(other, Differential) and self.coeff == other.coeff

    def __hash__(self):
        return hash(self.coeff)

    def __add__(self, other):
        return Differential(self.coeff + other.coeff)

    def __neg__(self):
        return Differential(-self.coeff)

    def scale(self, m: int):
        F = self.F
        return Differential(self.coeff * (m % F.p))

    def __repr__(self):
        return f"Differential({self.to_str()})"

    def to_str(self):
        if self.is_zero():
            return "0"
        return f"({self.coeff.to_str()}) dt"

    def to_json(self):
        return self.coeff.to_json()

    def ord_at(self, place) -> int:
        """Order at 0, at infinity, or at the closed point given by a monic irreducible."""
        if self.is_zero():
            raise ValueError("order of the zero form")
        if place == ZERO_PLACE or place == 0:
            return self.coeff.ord_zero()
        if place == INF_PLACE:
            return self.coeff.ord_inf() - 2
        P = tuple(place)
        if len(P) == 2 and P[0] == 0:
            return self.coeff.ord_zero()
        return self.coeff.ord_poly(P)

    def finite_places(self):
        """Sorted [(monic irreducible P, ord)] over zeros and poles in the affine line."""
        R = self.F.poly
        out = {}
        for part, sign in ((self.coeff.num, 1), (self.coeff.den, -1)):
            if R.deg(part) <= 0:
                continue
            for P, m in R.factor(part):
                out[P] = out.get(P, 0) + sign * m
        return sorted(((P, m) for P, m in out.items() if m), key=lambda t: (len(t[0]), t[0]))

    def degree_check(self) -> int:
        total = sum((len(P) - 1) * m for P, m in self.finite_places()) + self.ord_at(INF_PLACE)
        if total != -2:
            raise InternalInconsistency(f"differential degree {total} != -2 for {self.to_str()}")
        return total
