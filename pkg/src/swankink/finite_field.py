"""Finite fields F_q, q = p^f, and univariate polynomials over them.

Field elements are plain ints 0..q-1.  The base-p digits of an element are the
coefficients of 1, x, ..., x^(f-1), where x is a root of the defining modulus
(the lexicographically smallest monic irreducible of degree f over F_p, ordered
by the integer encoding of its lower coefficients).

Polynomials are tuples of field elements, lowest degree first, with no
trailing zeros; the zero polynomial is ().
"""

from __future__ import annotations

import random
from functools import lru_cache

MAX_TABLE = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _prime_factors(n: int):
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """The field with p**f elements."""

    def __init__(self, p: int, f: int = 1):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if f < 1:
            raise ValueError("f must be >= 1")
        self.p = p
        self.f = f
        self.q = p ** f
        if self.q > MAX_TABLE:
            raise ValueError(f"residue field of size {self.q} is too large")
        if f == 1:
            self.modulus = (0, 1)
            self._exp = self._log = None
        else:
            self.modulus = _smallest_irreducible(p, f)
            self._build_tables()
        self.poly = PolyRing(self)

    def __repr__(self):
        return f"FiniteField({self.p}, {self.f})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((self.p, self.f))

    # digit helpers
    def digits(self, a: int):
        p, out = self.p, []
        for _ in range(self.f):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def from_digits(self, ds) -> int:
        n = 0
        for d in reversed(list(ds)):
            n = n * self.p + (d % self.p)
        return n

    def _slow_mul(self, a: int, b: int) -> int:
        p, f = self.p, self.f
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for t in range(f):
                    prod[k - f + t] = (prod[k - f + t] - c * mod[t]) % p
        return self.from_digits(prod[:f])

    def _build_tables(self):
        q = self.q
        order = q - 1
        factors = _prime_factors(order)
        for g in range(2, q):
            ok = True
            for r in factors:
                if self._slow_pow(g, order // r) == 1:
                    ok = False
                    break
            if ok:
                break
        exp = [0] * (2 * order)
        log = [0] * q
        a = 1
        for i in range(order):
            exp[i] = a
            log[a] = i
            a = self._slow_mul(a, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp, self._log = exp, log
        self.generator = g

    def _slow_pow(self, a: int, n: int) -> int:
        r = 1
        while n:
            if n & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            n >>= 1
        return r

    # field operations
    def add(self, a: int, b: int) -> int:
        if self.f == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = self.digits(a), self.digits(b)
        return self.from_digits(x + y for x, y in zip(da, db))

    def neg(self, a: int) -> int:
        if self.f == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.f == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_q")
        if self.f == 1:
            return pow(a, -1, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        if self.f == 1:
            return pow(a, n % (self.p - 1) if n < 0 else n, self.p)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        return n % self.p

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        return self.pow(a, self.q // self.p)

    def elements(self):
        return range(self.q)

    def char_multiple(self, n: int, a: int) -> int:
        """n * a for an integer n."""
        return self.mul(self.from_int(n), a)


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, f: int):
    base = FiniteField(p, 1)
    R = base.poly
    for n in range(p ** f):
        low = []
        m = n
        for _ in range(f):
            m, d = divmod(m, p)
            low.append(d)
        cand = tuple(low) + (1,)
        if low[0] == 0:
            continue
        if R.is_irreducible(cand):
            return cand
    raise AssertionError("no irreducible polynomial found")


class PolyRing:
    """Univariate polynomial arithmetic over a FiniteField."""

    def __init__(self, F: FiniteField):
        self.F = F

    @staticmethod
    def trim(a):
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return tuple(a)

    @staticmethod
    def deg(a) -> int:
        return len(a) - 1 if a else -1

    def const(self, c):
        return self.trim((c,))

    def monomial(self, c, n):
        return self.trim((0,) * n + (c,))

    def add(self, a, b):
        F = self.F
        n = max(len(a), len(b))
        return self.trim(F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0)
                         for i in range(n))

    def neg(self, a):
        return tuple(self.F.neg(c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, c, a):
        return self.trim(self.F.mul(c, x) for x in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        F = self.F
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return self.trim(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        a = list(a)
        db = len(b) - 1
        inv_lead = F.inv(b[-1])
        if len(a) - 1 < db:
            return (), self.trim(a)
        quot = [0] * (len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k]
            if c:
                c = F.mul(c, inv_lead)
                quot[k - db] = c
                for i in range(db + 1):
                    a[k - db + i] = F.sub(a[k - db + i], F.mul(c, b[i]))
        return self.trim(quot), self.trim(a[:db])

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self, a):
        if not a:
            return ()
        return self.scale(self.F.inv(a[-1]), a)

    def gcd(self, a, b):
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def deriv(self, a):
        F = self.F
        return self.trim(F.char_multiple(i, a[i]) for i in range(1, len(a)))

    def eval(self, a, x):
        F = self.F
        acc = 0
        for c in reversed(a):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def pow(self, a, n):
        r = (1,)
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def powmod(self, a, n, m):
        r = (1,)
        a = self.mod(a, m)
        while n:
            if n & 1:
                r = self.mod(self.mul(r, a), m)
            a = self.mod(self.mul(a, a), m)
            n >>= 1
        return r

    def is_pth_power(self, a) -> bool:
        p = self.F.p
        return all(c == 0 for i, c in enumerate(a) if i % p)

    def pth_root(self, a):
        """h with h^p = a; requires only exponents divisible by p."""
        F = self.F
        if not self.is_pth_power(a):
            raise ValueError("polynomial is not a p-th power")
        return self.trim(F.pth_root(a[i]) for i in range(0, len(a), F.p))

    def compose_frobenius_x(self, m):
        """x^q mod m."""
        return self.powmod((0, 1), self.F.q, m)

    def is_irreducible(self, a) -> bool:
        n = self.deg(a)
        if n <= 0:
            return False
        if n == 1:
            return True
        a = self.monic(a)
        q = self.F.q
        x = (0, 1)
        for r in _prime_factors(n):
            h = self.powmod(x, q ** (n // r), a)
            if self.deg(self.gcd(self.sub(h, x), a)) > 0:
                return False
        return self.sub(self.powmod(x, q ** n, a), self.mod(x, a)) == ()

    # factorization
    def squarefree(self, a):
        """[(g, mult)] with g squarefree, pairwise coprime, monic."""
        a = self.monic(a)
        if self.deg(a) <= 0:
            return []
        p = self.F.p
        res = {}
        da = self.deriv(a)
        c = self.gcd(a, da)
        w = self.exact_div(a, c)
        i = 1
        while self.deg(w) > 0:
            y = self.gcd(w, c)
            z = self.exact_div(w, y)
            if self.deg(z) > 0:
                res[z] = res.get(z, 0) + i
            i += 1
            w = y
            c = self.exact_div(c, y)
        if self.deg(c) > 0:
            for g, m in self.squarefree(self.pth_root(c)):
                res[g] = res.get(g, 0) + m * p
        return sorted(res.items(), key=lambda t: (len(t[0]), t[0]))

    def distinct_degree(self, a):
        a = self.monic(a)
        out = []
        x = (0, 1)
        h = x
        d = 0
        q = self.F.q
        while self.deg(a) >= 2 * (d + 1):
            d += 1
            h = self.powmod(h, q, a)
            g = self.gcd(self.sub(h, x), a)
            if self.deg(g) > 0:
                out.append((g, d))
                a = self.exact_div(a, g)
                h = self.mod(h, a)
        if self.deg(a) > 0:
            out.append((a, self.deg(a)))
        return out

    def equal_degree(self, a, d, rng):
        a = self.monic(a)
        n = self.deg(a)
        if n == d:
            return [a]
        F = self.F
        while True:
            r = self.trim(rng.randrange(F.q) for _ in range(n))
            if self.deg(r) <= 0:
                continue
            if F.p == 2:
                t = r
                acc = r
                for _ in range(F.f * d - 1):
                    t = self.mod(self.mul(t, t), a)
                    acc = self.add(acc, t)
                b = acc
            else:
                b = self.sub(self.powmod(r, (F.q ** d - 1) // 2, a), (1,))
            g = self.gcd(b, a)
            if 0 < self.deg(g) < n:
                return (self.equal_degree(g, d, rng)
                        + self.equal_degree(self.exact_div(a, g), d, rng))

    def factor(self, a, seed: int = 0):
        """Sorted [(monic irreducible, multiplicity)]; the unit factor is dropped."""
        rng = random.Random(seed)
        out = []
        for g, m in self.squarefree(a):
            for h, d in self.distinct_degree(g):
                for irr in self.equal_degree(h, d, rng):
                    out.append((irr, m))
        out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
        return out

    def roots(self, a):
        """Sorted [(root, multiplicity)] in F_q."""
        return [(self.F.neg(g[0]), m) for g, m in self.factor(a) if len(g) == 2]
