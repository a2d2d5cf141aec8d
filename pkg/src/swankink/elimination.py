"""p-th power elimination: find I = 1 + sum b_j X^j with I^p matching G at degrees p, 2p, ..., sp.

X is T on the T side and T^-1 on the T^-1 side.  The system is solved by a
pi-adic digit tree over the (rescaled) unknowns, pruned by a valuation bound
every genuine solution must meet, and finished by multivariate Newton once
the Hensel conditions certify a unique root inside a node.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, floor

from .errors import ExtensionRequired, NoConvergence, PrecisionLoss
from .series import LaurentSeries
from .valued import INF, FieldConfig, LocalFieldElement, extend_field

W = LocalFieldElement
log = logging.getLogger(__name__)

MAX_NODES = 20000
MAX_LEVEL_FACTOR = 6
DEFLATE_AT = 32
DEFLATE_TRIES = 16


@dataclass
class EliminationResult:
    I: LaurentSeries
    remainder: LaurentSeries
    targetDegrees: list
    cValuations: dict
    side: int
    s: int
    solutions: int = 1
    cfg: FieldConfig = None

    def c_valuation(self, idx):
        return self.cValuations.get(idx, INF)

    def to_json(self):
        from .io import rational_json
        return {
            "side": "T" if self.side > 0 else "T^-1",
            "s": self.s,
            "I": self.I.to_json(),
            "remainder": self.remainder.to_json(),
            "targetDegrees": self.targetDegrees,
            "cValuations": {str(k): rational_json(v) for k, v in sorted(self.cValuations.items())},
            "solutions": self.solutions,
        }


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _vp(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _padd(a, b):
    out = dict(a)
    for mono, x in b.items():
        out[mono] = out[mono] + x if mono in out else x
    return {m: x for m, x in out.items() if not x.is_exact_zero()}


def _pmul(a, b):
    out = {}
    for ma, xa in a.items():
        for mb, xb in b.items():
            mono = tuple(i + j for i, j in zip(ma, mb))
            t = xa * xb
            out[mono] = out[mono] + t if mono in out else t
    return {m: x for m, x in out.items() if not x.is_exact_zero()}


def _pderiv(a, j, cfg):
    out = {}
    for mono, x in a.items():
        if mono[j]:
            m2 = mono[:j] + (mono[j] - 1,) + mono[j + 1:]
            out[m2] = x * W.from_int(cfg, mono[j])
    return out


def _peval(a, bh, cfg):
    cache = {}

    def pw(j, n):
        if (j, n) not in cache:
            cache[(j, n)] = W.one(cfg) if n == 0 else pw(j, n - 1) * bh[j]
        return cache[(j, n)]

    acc = W.zero(cfg)
    for mono, x in a.items():
        t = x
        for j, n in enumerate(mono):
            if n:
                t = t * pw(j, n)
        acc = acc + t
    return acc


class _System:
    """Normalized equations Phi_k(bh) = 0, k = 1..s, with b_j = pi^(u_j) * bh_j.

    Row k is the X^(kp) coefficient of I^p minus g_(kp), expanded as an explicit
    polynomial in bh and divided by the pi-power of its content, so every row has
    integral coefficients and at least one unit coefficient.
    """

    def __init__(self, cfg, g, s, c, shifts=None):
        self.cfg, self.s = cfg, s
        self.p = p = cfg.p
        self.shifts = list(shifts or [0] * s)
        self.u = [c * j + t for j, t in zip(range(1, s + 1), self.shifts)]
        self.polys, self.envelopes = [], []
        zero_mono = (0,) * s
        for k in range(1, s + 1):
            row = {}
            for m in _compositions(p, s + 1):
                mono = m[1:]
                if sum(j * mj for j, mj in enumerate(mono, start=1)) != k * p:
                    continue
                mult = factorial(p)
                for mj in m:
                    mult //= factorial(mj)
                row[mono] = W.from_int(cfg, mult).mul_pi(sum(uj * mj for uj, mj in zip(self.u, mono)))
            row[zero_mono] = row.get(zero_mono, W.zero(cfg)) - g.get(k * p, W.zero(cfg))
            vals = [x.min_valuation() for x in row.values() if not x.is_zero()]
            w = int(min(vals) * cfg.e) if vals else 0
            row = {mono: x.mul_pi(-w) for mono, x in row.items() if not x.is_zero()}
            self.polys.append(row)
            self.envelopes.append(self._envelope(row))
        self.dpolys = [[_pderiv(row, j, cfg) for j in range(s)] for row in self.polys]
        self._det = None

    def _envelope(self, row):
        """n -> least valuation of an order-n Taylor coefficient at any integral point."""
        p = self.p
        env = {}
        for mono, x in row.items():
            base = x.min_valuation()
            for ks in itertools.product(*(range(mj + 1) for mj in mono)):
                n = sum(ks)
                if n == 0:
                    continue
                v = base + sum(_vp(comb(mj, kj), p) for mj, kj in zip(mono, ks))
                if n not in env or v < env[n]:
                    env[n] = v
        return env

    def need(self, k, rho):
        """Lower bound for v(Phi_k) at any node within rho of a root."""
        env = self.envelopes[k]
        return min((v + n * rho for n, v in env.items()), default=INF)

    def phi(self, bh):
        return [_peval(row, bh, self.cfg) for row in self.polys]

    def jacobian(self, bh):
        return [[_peval(d, bh, self.cfg) for d in drow] for drow in self.dpolys]

    def det_poly(self):
        """det(J) as a polynomial; its zeros carry the singular roots."""
        if self._det is None:
            n = self.s
            total = {}
            for perm in itertools.permutations(range(n)):
                inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
                term = {(0,) * n: W.one(self.cfg) if inv % 2 == 0 else -W.one(self.cfg)}
                for i in range(n):
                    term = _pmul(term, self.dpolys[i][perm[i]])
                    if not term:
                        break
                total = _padd(total, term)
            self._det = total
        return self._det


def _det(M, cfg):
    n = len(M)
    total = W.zero(cfg)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = W.one(cfg)
        for i in range(n):
            term = term * M[i][perm[i]]
            if term.is_exact_zero():
                break
        total = total - term if inv % 2 else total + term
    return total


def _solve(M, rhs):
    """Gaussian elimination over W with minimal-valuation pivots."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not A[r][col].is_zero():
                if piv is None or A[r][col].j < A[piv][col].j:
                    piv = r
        if piv is None:
            raise PrecisionLoss("singular Jacobian at working precision")
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        for r in range(n):
            if r != col and not A[r][col].is_zero():
                fac = A[r][col] * inv
                A[r] = [A[r][k] - fac * A[col][k] for k in range(n + 1)]
    return [A[i][n] * A[i][i].inverse() for i in range(n)]


def _minv(vals):
    return min(v.min_valuation() for v in vals)


def _newton(system, bh):
    cfg = system.cfg
    for _ in range((cfg.e * cfg.precision).bit_length() + 6):
        ph = system.phi(bh)
        if all(x.is_zero() for x in ph):
            return bh
        step = _solve(system.jacobian(bh), ph)
        bh = [b - d for b, d in zip(bh, step)]
    ph = system.phi(bh)
    if all(x.is_zero() for x in ph):
        return bh
    raise NoConvergence("Newton refinement did not converge")


def _children(system, nodes, d, lifts):
    """Digit-d refinements of the nodes that meet every row's lifting bound."""
    rho = Fraction(d + 1, system.cfg.e)
    needs = [system.need(k, rho) for k in range(system.s)]
    out = []
    for node in nodes:
        for digits in itertools.product(range(len(lifts)), repeat=system.s):
            child = tuple(b + lifts[a].mul_pi(d) if a else b for b, a in zip(node, digits))
            ph = system.phi(child)
            if all(x.min_valuation() >= n for x, n in zip(ph, needs)):
                out.append((child, ph))
    return out


def _peeled_system(cfg, g, s, c):
    """Shift every unknown whose leading digit is forced to 0 until none is.

    A shift b_j -> pi * b_j is only taken when no level-0 node survives with a
    nonzero digit in that coordinate, so no root is lost.
    """
    lifts = [W.from_residue(cfg, a) for a in range(cfg.F.q)]
    cap = cfg.e * max(4, cfg.precision // 4)
    shifts = [0] * s
    zero = tuple(W.zero(cfg) for _ in range(s))
    while True:
        system = _System(cfg, g, s, c, shifts)
        kids = _children(system, [zero], 0, lifts)
        if not kids:
            return system
        forced = [j for j in range(s) if shifts[j] < cap
                  and all(child[j].is_exact_zero() for child, _ in kids)]
        if not forced:
            return system
        for j in forced:
            shifts[j] += 1


def _tree_solve(system):
    cfg = system.cfg
    e, p, s = cfg.e, cfg.p, system.s
    lifts = [W.from_residue(cfg, a) for a in range(cfg.F.q)]
    level_cap = MAX_LEVEL_FACTOR * e * (s + 2) + 4 * e
    nodes = [tuple(W.zero(cfg) for _ in range(s))]
    solutions, singular = [], []
    for d in range(level_cap):
        nxt = _children(system, nodes, d, lifts)
        nodes = []
        radius = Fraction(d + 1, e)
        for child, ph in nxt:
            vdet = _det(system.jacobian(child), cfg).min_valuation()
            vphi = _minv(ph)
            if vdet != INF and radius > vdet and vphi > 2 * vdet and vphi - vdet >= radius:
                root = child if vphi == INF else _newton(system, list(child))
                solutions.append(tuple(root))
            else:
                nodes.append(child)
        if len(nodes) > DEFLATE_AT:
            nodes = _prune_singular(system, nodes, solutions, singular, Fraction(d + 1, e * p))
        log.debug("level %d: %d open nodes, %d roots", d, len(nodes), len(solutions))
        if len(nodes) > MAX_NODES:
            raise NoConvergence(f"elimination tree exceeded {MAX_NODES} nodes")
        if not nodes:
            return solutions
    deflated = [r for r in (_deflate(system, node) for node in nodes) if r is not None]
    if not deflated:
        raise NoConvergence("elimination tree did not resolve within the level cap")
    return solutions + deflated


def _near(a, b, radius):
    return all((x - y).min_valuation() >= radius for x, y in zip(a, b))


def _prune_singular(system, nodes, solutions, singular, radius):
    """Settle clusters of open nodes around singular roots.

    Such a cluster never passes the Hensel test and keeps growing level after
    level.  Each deflated root is verified, recorded once, and its cluster dropped.
    """
    tried = []
    for node in nodes:
        if any(_near(node, r, radius) for r in singular) or any(_near(node, t, radius) for t in tried):
            continue
        if len(tried) >= DEFLATE_TRIES:
            break
        tried.append(node)
        root = _deflate(system, node)
        if root is None or any(all(a.equals(b) for a, b in zip(root, r)) for r in solutions):
            continue
        singular.append(root)
        solutions.append(root)
    return [n for n in nodes if not any(_near(n, r, radius) for r in singular)]


def _deflate(system, node):
    """Newton toward a singular root near the node; the result must zero the full system.

    Exactly-zero coordinates are pinned first.  Otherwise one equation is swapped
    for det(J) = 0, which isolates a root of corank one as a regular zero.
    """
    cfg = system.cfg
    free = [j for j, b in enumerate(node) if not b.is_exact_zero()]
    if not free:
        return node if all(x.is_zero() for x in system.phi(node)) else None
    polys = system.polys
    dpolys = system.dpolys
    for rows in itertools.combinations(range(system.s), len(free)):
        root = _sub_newton(system, node, free, [polys[i] for i in rows], [dpolys[i] for i in rows])
        if root is not None:
            return root
    if len(free) < system.s:
        return None
    det = system.det_poly()
    ddet = [_pderiv(det, j, cfg) for j in range(system.s)]
    for drop in range(system.s):
        keep = [i for i in range(system.s) if i != drop]
        root = _sub_newton(system, node, free, [polys[i] for i in keep] + [det],
                           [dpolys[i] for i in keep] + [ddet])
        if root is not None:
            return root
    return None


def _sub_newton(system, node, free, polys, dpolys):
    cfg = system.cfg
    bh = list(node)
    try:
        for _ in range((cfg.e * cfg.precision).bit_length() + 8):
            if all(x.is_zero() for x in system.phi(bh)):
                return tuple(bh)
            vals = [_peval(q, bh, cfg) for q in polys]
            sub = [[_peval(drow[j], bh, cfg) for j in free] for drow in dpolys]
            step = _solve(sub, vals)
            for j, d in zip(free, step):
                bh[j] = bh[j] - d
    except (PrecisionLoss, ZeroDivisionError):
        return None
    return tuple(bh) if all(x.is_zero() for x in system.phi(bh)) else None


def _dedupe(sols):
    out = []
    for sol in sorted(sols, key=lambda t: tuple(x.sort_key() for x in t)):
        if not any(all(a.equals(b) for a, b in zip(sol, o)) for o in out):
            out.append(sol)
    return out


def default_scale(G: LaurentSeries, side: int):
    """Largest sigma in (1/e)Z with v(a_d) >= sigma*|d| for the stored terms (T^-1 side)."""
    if side > 0:
        return Fraction(0)
    cfg = G.cfg
    best = None
    for d, c in G.terms.items():
        if d < 0 and not c.is_zero():
            v = c.min_valuation() / (-d)
            best = v if best is None else min(best, v)
    t = G.tail(-1)
    if t is not None:
        best = t.sigma if best is None else min(best, t.sigma)
    if best is None or best <= 0:
        return Fraction(0)
    return Fraction(floor(best * cfg.e), cfg.e)


def eliminate(G: LaurentSeries, s: int, side: int, choice: str = "first", r0=None,
              auto_extend: bool = False) -> EliminationResult:
    """Corrector I with (G - I^p) vanishing at degrees p..sp on the given side."""
    if side not in (1, -1):
        raise ValueError("side must be +1 (T) or -1 (T^-1)")
    if s < 0:
        raise ValueError("s must be nonnegative")
    if any(d * side < 0 for d in G.terms) or G.tail(-side) is not None:
        raise ValueError("series has terms on the wrong side")
    if not G.coeff(0).equals(1):
        raise ValueError("series must have constant term 1")
    try:
        return _eliminate(G, s, side, choice, r0)
    except ExtensionRequired as exc:
        if not auto_extend:
            raise
        last = exc
    p = G.cfg.p
    for em, fm in ((p, 1), (1, 2), (1, p), (p, 2), (p * p, 1)):
        try:
            cfg2, emb = extend_field(G.cfg, em, fm)
            return _eliminate(G.embed(emb), s, side, choice, r0)
        except ExtensionRequired as exc:
            last = exc
    raise last


def _eliminate(G, s, side, choice, r0):
    cfg = G.cfg
    p = cfg.p
    targets = [k * p * side for k in range(1, s + 1)]
    g = {abs(d): c for d, c in G.terms.items()}
    K = 0
    for k in range(1, s + 1):
        if not g.get(k * p, W.zero(cfg)).is_zero():
            K = k
    if K == 0:
        I = LaurentSeries.one(cfg)
        sols = [()]
    else:
        sigma = default_scale(G, side) if r0 is None else Fraction(r0)
        if side > 0:
            sigma = Fraction(0)
        c = sigma * cfg.e
        if c.denominator != 1:
            raise ExtensionRequired(f"scaling by r0={sigma} needs e*r0 integral",
                                    e_mult=c.denominator)
        system = _peeled_system(cfg, g, K, int(c))
        sols = _dedupe(_tree_solve(system))
        if not sols:
            raise ExtensionRequired("no solution of the elimination system in the working field",
                                    e_mult=p, f_mult=1)
        pick = sols[0] if choice == "first" else sols[-1]
        terms = {0: W.one(cfg)}
        for j, (b, u) in enumerate(zip(pick, system.u), start=1):
            if not b.is_exact_zero():
                terms[j * side] = b.mul_pi(u)
        I = LaurentSeries(cfg, terms)
    rem = G - I.pth_power()
    return EliminationResult(I=I, remainder=rem, targetDegrees=targets,
                             cValuations=c_valuations(rem, side, s * p), side=side, s=s,
                             solutions=len(sols), cfg=cfg)


def c_valuations(rem: LaurentSeries, side: int, upto: int):
    """Signed index -> v(c_i): +i for T^-i, -i for T^i; None if zero to precision."""
    top = max([abs(d) for d in rem.terms] + [upto])
    tail = rem.tail(side)
    out = {}
    for i in range(1, top + 1):
        key = i if side < 0 else -i
        if tail is not None and i > tail.after:
            break
        c = rem.terms.get(i * side)
        if c is None or c.is_exact_zero():
            out[key] = INF
        elif c.is_zero():
            out[key] = None
        else:
            out[key] = c.min_valuation()
    return out
