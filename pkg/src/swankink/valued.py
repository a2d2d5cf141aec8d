"""Arithmetic in W = Q_q(pi), pi^e = p, with exact rational valuations.

An element is pi^j * D where D = sum_i u_i pi^i (0 <= i < e) and each u_i is an
integer vector of length f, read as an element of Z_q = Z_p[x]/(phi).  D is a
unit whenever the element is nonzero.  Elements are either exact (integer data,
no truncation) or carry a relative precision rho in pi-units: the element is
known modulo pi^(j + rho).  Zeros record an absolute precision in j instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import ExtensionCapExceeded, NonUnit, PrecisionLoss
from .finite_field import FiniteField

INF = math.inf


@dataclass(frozen=True)
class FieldConfig:
    p: int
    f: int = 1
    e: int = 1
    precision: int = 48
    max_ef: int = 10 ** 7

    def __post_init__(self):
        if self.f < 1 or self.e < 1 or self.precision < 1:
            raise ValueError("f, e and precision must be positive")
        FiniteField(self.p, 1)  # validates p

    @cached_property
    def F(self) -> FiniteField:
        return _field(self.p, self.f)

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def modulus(self):
        """Integer lift of the defining polynomial of F_q (low to high, monic)."""
        return self.F.modulus

    def with_precision(self, n: int) -> "FieldConfig":
        return FieldConfig(self.p, self.f, self.e, n, self.max_ef)

    def key(self):
        return (self.p, self.f, self.e, self.precision)


@lru_cache(maxsize=None)
def _field(p, f):
    return FiniteField(p, f)


# unramified vectors (length f integer lists, reduced modulo phi)

def _u_is_zero(u):
    return not any(u)


def _u_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _u_scale(c, u):
    return tuple(c * a for a in u)


def _u_mul(u, v, phi):
    f = len(phi) - 1
    if f == 1:
        return (u[0] * v[0],)
    prod = [0] * (2 * f - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    prod[i + j] += a * b
    for k in range(2 * f - 2, f - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for t in range(f):
                prod[k - f + t] -= c * phi[t]
    return tuple(prod[:f])


def _u_vp(u, p):
    """p-adic valuation of a nonzero unramified vector."""
    best = None
    for a in u:
        if a:
            k = 0
            while a % p == 0:
                a //= p
                k += 1
            if best is None or k < best:
                best = k
    return best


def _u_mod(u, m):
    return tuple(a % m for a in u)


class LocalFieldElement:
    __slots__ = ("cfg", "j", "D", "rho")

    def __init__(self, cfg: FieldConfig, j: int, D: dict, rho):
        # use make(); this constructor trusts its input
        self.cfg = cfg
        self.j = j
        self.D = D
        self.rho = rho

    # construction
    @staticmethod
    def make(cfg: FieldConfig, j: int, D: dict, A=None) -> "LocalFieldElement":
        """Normalize pi^j * sum D[i] pi^i, truncated to absolute precision A (None = exact)."""
        e, p = cfg.e, cfg.p
        D = {i: u for i, u in D.items() if not _u_is_zero(u)}
        # bring indices into [0, e), folding p^q into the coefficients
        if any(i < 0 or i >= e for i in D):
            split = [(divmod(i, e), u) for i, u in D.items()]
            qmin = min(0, min(q for (q, _), _ in split))
            j += qmin * e
            D2 = {}
            for (q, r), u in split:
                u = _u_scale(p ** (q - qmin), u)
                D2[r] = _u_add(D2[r], u) if r in D2 else u
            D = {i: u for i, u in D2.items() if not _u_is_zero(u)}
        if A is not None:
            b = A - j
            D = _truncate(D, b, e, p)
        if not D:
            if A is None:
                return LocalFieldElement(cfg, 0, {}, None)
            return LocalFieldElement(cfg, A, {}, 0)
        t = min(e * _u_vp(u, p) + i for i, u in D.items())
        if t:
            D2 = {}
            for i, u in D.items():
                k = -((i - t) // e)  # ceil((t - i)/e)
                i2 = i - t + e * k
                if k >= 0:
                    u = tuple(a // p ** k for a in u)
                else:
                    u = _u_scale(p ** (-k), u)
                D2[i2] = _u_add(D2[i2], u) if i2 in D2 else u
            D = D2
            j += t
        if A is None:
            return LocalFieldElement(cfg, j, D, None)
        return LocalFieldElement(cfg, j, D, A - j)

    @classmethod
    def zero(cls, cfg, A=None):
        return cls(cfg, 0 if A is None else A, {}, None if A is None else 0)

    @classmethod
    def from_int(cls, cfg, n: int):
        if n == 0:
            return cls.zero(cfg)
        return cls.make(cfg, 0, {0: (n,) + (0,) * (cfg.f - 1)})

    @classmethod
    def one(cls, cfg):
        return cls.from_int(cfg, 1)

    @classmethod
    def pi(cls, cfg, k: int = 1):
        """pi^k (exact)."""
        return cls(cfg, k, {0: (1,) + (0,) * (cfg.f - 1)}, None)

    @classmethod
    def from_unramified(cls, cfg, u, j: int = 0):
        u = tuple(u) + (0,) * (cfg.f - len(u))
        return cls.make(cfg, j, {0: u})

    @classmethod
    def from_residue(cls, cfg, c: int, j: int = 0):
        """Teichmuller-free lift of the F_q element c: digits as integers 0..p-1."""
        return cls.from_unramified(cfg, cfg.F.digits(c), j)

    @classmethod
    def from_fraction(cls, cfg, x):
        x = Fraction(x)
        num = cls.from_int(cfg, x.numerator)
        d = x.denominator
        k = 0
        while d % cfg.p == 0:
            d //= cfg.p
            k += 1
        out = num * cls.pi(cfg, -k * cfg.e)
        if d != 1:
            out = out * cls.from_int(cfg, d).inverse()
        return out

    @classmethod
    def from_digits(cls, cfg, j: int, digits):
        """pi^j * sum digits[i] pi^i; a digit is an int or a length-f list."""
        D = {}
        for i, d in enumerate(digits):
            if isinstance(d, (list, tuple)):
                u = tuple(int(x) for x in d) + (0,) * (cfg.f - len(d))
            else:
                u = (int(d),) + (0,) * (cfg.f - 1)
            D[i] = u
        return cls.make(cfg, j, D)

    # predicates
    @property
    def exact(self) -> bool:
        return self.rho is None

    def is_zero(self) -> bool:
        """Zero to the working precision (or exactly)."""
        return not self.D

    def is_exact_zero(self) -> bool:
        return not self.D and self.rho is None

    def _abs_prec(self):
        if self.rho is None:
            return None
        return self.j + self.rho

    # valuation
    def valuation(self):
        if not self.D:
            if self.rho is None:
                return INF
            raise PrecisionLoss("element is zero to working precision")
        v = Fraction(self.j, self.cfg.e)
        if self.rho is not None and v >= self.cfg.precision - 2:
            raise PrecisionLoss(f"valuation {v} inside the precision guard band")
        return v

    def min_valuation(self):
        """Exact valuation, or the proven lower bound for a zero to precision."""
        if not self.D:
            return INF if self.rho is None else Fraction(self.j, self.cfg.e)
        return Fraction(self.j, self.cfg.e)

    def unit_part(self) -> "LocalFieldElement":
        if not self.D:
            raise NonUnit("zero has no unit part")
        return LocalFieldElement(self.cfg, 0, self.D, self.rho)

    def residue(self) -> int:
        if not self.D or self.j != 0:
            raise NonUnit("residue of a non-unit")
        return self._residue_of_D()

    def leading_residue(self) -> int:
        """Residue of pi^(-j) x."""
        if not self.D:
            raise PrecisionLoss("leading residue of zero")
        return self._residue_of_D()

    def _residue_of_D(self) -> int:
        u = self.D.get(0)
        F = self.cfg.F
        return F.from_digits(a % self.cfg.p for a in u)

    # arithmetic
    def _check(self, other):
        if isinstance(other, int):
            return LocalFieldElement.from_int(self.cfg, other)
        if isinstance(other, Fraction):
            return LocalFieldElement.from_fraction(self.cfg, other)
        if not isinstance(other, LocalFieldElement):
            return NotImplemented
        if other.cfg.key() != self.cfg.key():
            raise ValueError("elements live in different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        A = _min_abs(a._abs_prec(), b._abs_prec())
        if not a.D:
            if A is None:
                return b
            return LocalFieldElement.make(a.cfg, b.j, dict(b.D), A) if b.D else LocalFieldElement.zero(a.cfg, A)
        if not b.D:
            return b + a
        j = min(a.j, b.j)
        D = {}
        for x in (a, b):
            s = x.j - j
            for i, u in x.D.items():
                k = i + s
                D[k] = _u_add(D[k], u) if k in D else u
        return LocalFieldElement.make(a.cfg, j, D, A)

    __radd__ = __add__

    def __neg__(self):
        return LocalFieldElement(self.cfg, self.j, {i: _u_scale(-1, u) for i, u in self.D.items()},
                                 self.rho) if self.rho is None else \
            LocalFieldElement.make(self.cfg, self.j, {i: _u_scale(-1, u) for i, u in self.D.items()},
                                   self._abs_prec())

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        cfg = a.cfg
        if not a.D or not b.D:
            if (not a.D and a.rho is None) or (not b.D and b.rho is None):
                return LocalFieldElement.zero(cfg)
            if not a.D and not b.D:
                return LocalFieldElement.zero(cfg, a.j + b.j)
            z, nz = (a, b) if not a.D else (b, a)
            return LocalFieldElement.zero(cfg, z.j + nz.j)
        e, p, phi = cfg.e, cfg.p, cfg.modulus
        D = {}
        for i1, u1 in a.D.items():
            for i2, u2 in b.D.items():
                k = i1 + i2
                u = _u_mul(u1, u2, phi)
                if k >= e:
                    k -= e
                    u = _u_scale(p, u)
                D[k] = _u_add(D[k], u) if k in D else u
        j = a.j + b.j
        if a.rho is None and b.rho is None:
            A = None
        else:
            rho = min(x for x in (a.rho, b.rho) if x is not None)
            A = j + rho
        return LocalFieldElement.make(cfg, j, D, A)

    __rmul__ = __mul__

    def inverse(self) -> "LocalFieldElement":
        if not self.D:
            raise ZeroDivisionError("inverse of zero")
        cfg = self.cfg
        u0 = self.D.get(0)
        if len(self.D) == 1 and abs(u0[0]) == 1 and not any(u0[1:]):
            return LocalFieldElement(cfg, -self.j, {0: u0}, self.rho)
        target = cfg.e * cfg.precision
        if self.rho is not None:
            target = min(target, self.rho)
        unit = LocalFieldElement(cfg, 0, self.D, None)
        y = LocalFieldElement.from_residue(cfg, cfg.F.inv(unit._residue_of_D()))
        prec = 1
        two = LocalFieldElement.from_int(cfg, 2)
        while True:
            prec = min(2 * prec, target)
            y = LocalFieldElement(cfg, y.j, y.D, None)
            y = _truncate_el(y * (two - unit * y), prec)
            if prec >= target:
                break
        y = LocalFieldElement.make(cfg, y.j - self.j, dict(y.D), prec - self.j)
        return y

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = LocalFieldElement.one(self.cfg)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def mul_pi(self, k: int) -> "LocalFieldElement":
        """self * pi^k without touching the data."""
        if not self.D and self.rho is None:
            return self
        return LocalFieldElement(self.cfg, self.j + k, self.D, self.rho)

    def truncate(self, A: int) -> "LocalFieldElement":
        """Reduce to absolute precision A (pi-units)."""
        return _truncate_el(self, A)

    # comparison and display
    def key(self):
        return (1 if self.D else 0, self.j, tuple(sorted(self.D.items())), self.rho is None)

    def sort_key(self):
        """Deterministic order: zero first, then valuation, then canonical digits."""
        m = self.cfg.p ** self.cfg.precision
        digits = tuple((i, _u_mod(self.D[i], m)) for i in sorted(self.D))
        return (1 if self.D else 0, self.j, digits)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LocalFieldElement.from_int(self.cfg, other)
        if not isinstance(other, LocalFieldElement):
            return NotImplemented
        return self.cfg.key() == other.cfg.key() and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def equals(self, other) -> bool:
        """Equal up to the joint working precision."""
        return (self - self._check(other)).is_zero()

    def to_int(self):
        """The integer value when the element is an exact rational integer, else None."""
        if self.rho is not None or self.j < 0 or self.cfg.f > 1 and any(
                any(u[1:]) for u in self.D.values()):
            return None
        if not self.D:
            return 0
        e, p = self.cfg.e, self.cfg.p
        total = 0
        for i, u in self.D.items():
            if (i + self.j) % e:
                return None
            total += u[0] * p ** ((i + self.j) // e)
        return total

    def __repr__(self):
        n = self.to_int()
        if n is not None:
            return f"W({n})"
        if not self.D:
            return f"W(0 mod pi^{self.j})"
        parts = []
        for i in sorted(self.D):
            u = self.D[i]
            c = u[0] if self.cfg.f == 1 else list(u)
            parts.append(f"{c}*pi^{i + self.j}")
        tail = "" if self.rho is None else f" + O(pi^{self.j + self.rho})"
        return "W(" + " + ".join(parts) + tail + ")"

    def to_json(self):
        n = self.to_int()
        if n is not None:
            return str(n)
        e = self.cfg.e
        digits = []
        for i in range(e):
            u = self.D.get(i, (0,) * self.cfg.f)
            digits.append(str(u[0]) if self.cfg.f == 1 else [str(a) for a in u])
        return {"piShift": self.j, "digits": digits}


def _min_abs(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _truncate(D, b, e, p):
    """Keep D modulo pi^b (relative to its base index)."""
    out = {}
    for i, u in D.items():
        k = -((i - b) // e)  # ceil((b - i)/e)
        if k <= 0:
            continue
        u = _u_mod(u, p ** k)
        if not _u_is_zero(u):
            out[i] = u
    return out


def _truncate_el(x: LocalFieldElement, A: int) -> LocalFieldElement:
    if not x.D:
        if x.rho is None:
            return LocalFieldElement.zero(x.cfg, A)
        return LocalFieldElement.zero(x.cfg, min(A, x.j))
    A2 = A if x.rho is None else min(A, x.j + x.rho)
    return LocalFieldElement.make(x.cfg, x.j, dict(x.D), A2)


def lift_root_unramified(cfg_new: FieldConfig, phi, root_residue: int):
    """Hensel-lift a simple root of phi (integer coefficients) from F_q' to Z_q' mod p^N."""
    p, N, f = cfg_new.p, cfg_new.precision, cfg_new.f
    mod = p ** N
    phi_new = cfg_new.modulus
    xi = tuple(cfg_new.F.digits(root_residue))
    dphi = [k * c for k, c in enumerate(phi)][1:]

    def ev(poly, x):
        acc = (0,) * f
        for c in reversed(poly):
            acc = _u_add(_u_mul(acc, x, phi_new), (c,) + (0,) * (f - 1))
        return _u_mod(acc, mod)

    def u_inv(u):
        F = cfg_new.F
        r = F.inv(F.from_digits(a % p for a in u))
        y = tuple(F.digits(r))
        for _ in range(N.bit_length() + 1):
            t = _u_mul(u, y, phi_new)
            t = _u_add((2,) + (0,) * (f - 1), _u_scale(-1, t))
            y = _u_mod(_u_mul(y, t, phi_new), mod)
        return y

    for _ in range(N.bit_length() + 2):
        val = ev(phi, xi)
        if _u_is_zero(val):
            break
        step = _u_mul(val, u_inv(ev(dphi, xi)), phi_new)
        xi = _u_mod(_u_add(xi, _u_scale(-1, step)), mod)
    return xi


class Embedding:
    """W -> W' for W' obtained by extend_field."""

    def __init__(self, src: FieldConfig, dst: FieldConfig, k: int, xi):
        self.src, self.dst, self.k, self.xi = src, dst, k, xi

    def __call__(self, x: LocalFieldElement) -> LocalFieldElement:
        if x.cfg.key() != self.src.key():
            raise ValueError("element is not in the source field")
        dst, k = self.dst, self.k
        if not x.D:
            return LocalFieldElement.zero(dst, None if x.rho is None else x.j * k)
        if self.xi is None:
            pad = (0,) * (dst.f - self.src.f)
            D = {i * k: tuple(u) + pad for i, u in x.D.items()}
            A = None if x.rho is None else (x.j + x.rho) * k
            return LocalFieldElement.make(dst, x.j * k, D, A)
        # x -> xi: u(x) = sum u_a x^a becomes sum u_a xi^a
        phi_new = dst.modulus
        f2 = dst.f
        powers = [(1,) + (0,) * (f2 - 1)]
        for _ in range(1, self.src.f):
            powers.append(_u_mul(powers[-1], self.xi, phi_new))
        D = {}
        for i, u in x.D.items():
            acc = (0,) * f2
            for a, c in enumerate(u):
                if c:
                    acc = _u_add(acc, _u_scale(c, powers[a]))
            D[i * k] = acc
        A = (x.j * k) + dst.e * dst.precision
        if x.rho is not None:
            A = min(A, (x.j + x.rho) * k)
        return LocalFieldElement.make(dst, x.j * k, D, A)


def extend_field(cfg: FieldConfig, e_mult: int = 1, f_mult: int = 1):
    """New config (e*e_mult, f*f_mult) and the embedding map pi -> pi'^e_mult."""
    if e_mult < 1 or f_mult < 1:
        raise ValueError("multipliers must be >= 1")
    e2, f2 = cfg.e * e_mult, cfg.f * f_mult
    if e2 * f2 > cfg.max_ef:
        raise ExtensionCapExceeded(f"extension to e={e2}, f={f2} exceeds the cap {cfg.max_ef}",
                                   e_mult=e_mult, f_mult=f_mult)
    dst = FieldConfig(cfg.p, f2, e2, cfg.precision, cfg.max_ef)
    xi = None
    if cfg.f > 1 and f_mult > 1:
        roots = dst.F.poly.roots(tuple(c % cfg.p for c in cfg.modulus))
        xi = lift_root_unramified(dst, cfg.modulus, roots[0][0])
    return dst, Embedding(cfg, dst, e_mult, xi)
