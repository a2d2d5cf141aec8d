"""Exact piecewise-linear depth profiles, kinks, lambda by scan, and disk criteria.

The depth r -> delta(r) is convex on [0, r0] (a maximum of affine functions),
and at every radius with positive depth the attached form gives the exact
one-sided slopes.  Between two samples the profile is therefore pinned down
by tangent-line intersections, each confirmed by one further exact sample.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConnectednessNotEstablished, GridTooCoarse, InternalInconsistency
from .residue import Differential
from .swan import CoverSpec, swan_at

DEFAULT_GRID_LEVEL = 3
DEFAULT_GRID_CAP = 12


@dataclass
class PLProfile:
    breakpoints: list  # [(r, value)] with r strictly increasing
    slopes: list  # slope of each segment between consecutive breakpoints
    kinks: list
    r0: Fraction

    @classmethod
    def from_points(cls, points, r0):
        pts = []
        for r, v in sorted(points):
            if pts and pts[-1][0] == r:
                if pts[-1][1] != v:
                    raise InternalInconsistency(f"two values at r={r}")
                continue
            pts.append((Fraction(r), Fraction(v)))
        # drop interior points on straight lines
        keep = [pts[0]]
        for i in range(1, len(pts) - 1):
            (a, va), (b, vb), (c, vc) = keep[-1], pts[i], pts[i + 1]
            if (vb - va) * (c - b) != (vc - vb) * (b - a):
                keep.append(pts[i])
        if len(pts) > 1:
            keep.append(pts[-1])
        slopes = [(keep[i + 1][1] - keep[i][1]) / (keep[i + 1][0] - keep[i][0])
                  for i in range(len(keep) - 1)]
        kinks = [keep[i][0] for i in range(1, len(keep) - 1)]
        return cls(keep, slopes, kinks, Fraction(r0))

    @classmethod
    def constant(cls, value, r0, start=Fraction(0)):
        return cls([(Fraction(start), Fraction(value)), (Fraction(r0), Fraction(value))],
                   [Fraction(0)], [], Fraction(r0))

    @property
    def domain(self):
        return self.breakpoints[0][0], self.breakpoints[-1][0]

    def _segment(self, r):
        r = Fraction(r)
        lo, hi = self.domain
        if not lo <= r <= hi:
            raise ValueError(f"r={r} outside the profile domain [{lo}, {hi}]")
        for i in range(len(self.breakpoints) - 1):
            if r <= self.breakpoints[i + 1][0]:
                return i
        return len(self.breakpoints) - 2

    def value(self, r):
        r = Fraction(r)
        i = self._segment(r)
        (a, va) = self.breakpoints[i]
        return va + self.slopes[i] * (r - a)

    def left_slope(self, r):
        r = Fraction(r)
        if r <= self.domain[0]:
            return None
        for i in range(len(self.breakpoints) - 1):
            if r <= self.breakpoints[i + 1][0]:
                return self.slopes[i]
        return self.slopes[-1]

    def right_slope(self, r):
        r = Fraction(r)
        if r >= self.domain[1]:
            return None
        for i in range(len(self.breakpoints) - 1):
            if r < self.breakpoints[i + 1][0]:
                return self.slopes[i]
        return None

    def is_kink(self, r):
        return Fraction(r) in self.kinks

    def check(self):
        """Continuity is structural; verify nonnegativity and convexity."""
        if any(v < 0 for _, v in self.breakpoints):
            raise InternalInconsistency("negative profile value")
        for a, b in zip(self.slopes, self.slopes[1:]):
            if b < a:
                raise InternalInconsistency("profile is not convex")
        return True

    def scaled(self, c):
        c = Fraction(c)
        return PLProfile.from_points([(r, v * c) for r, v in self.breakpoints], self.r0)

    def rows(self):
        out = []
        for r, v in self.breakpoints:
            out.append((r, v, self.left_slope(r), self.right_slope(r), r in self.kinks))
        return out

    def to_json(self):
        from .io import rational_json
        return {
            "r0": rational_json(self.r0),
            "breakpoints": [[rational_json(r), rational_json(v)] for r, v in self.breakpoints],
            "slopes": [rational_json(s) for s in self.slopes],
            "kinks": [rational_json(k) for k in self.kinks],
        }


class _Sampler:
    def __init__(self, cover, threads=1):
        self.cover = cover
        self.cache = {}
        self.threads = threads

    def many(self, rs):
        todo = [r for r in dict.fromkeys(rs) if r not in self.cache]
        if self.threads > 1 and len(todo) > 1:
            with ThreadPoolExecutor(self.threads) as ex:
                vals = list(ex.map(self._eval, todo))
        else:
            vals = [self._eval(r) for r in todo]
        for r, v in zip(todo, vals):
            self.cache[r] = v
        return [self.cache[r] for r in rs]

    def _eval(self, r):
        return swan_at(self.cover, r, allow_zero=(r == 0))

    def __call__(self, r):
        return self.many([r])[0]


def initial_grid(cover: CoverSpec, level=DEFAULT_GRID_LEVEL):
    step = Fraction(1, cover.cfg.e * 2 ** level)
    pts = [Fraction(0)]
    k = 1
    while k * step < cover.r0:
        pts.append(k * step)
        k += 1
    pts.append(cover.r0)
    return pts


def build_profile(cover: CoverSpec, grid_cap=DEFAULT_GRID_CAP, threads=1,
                  grid_level=DEFAULT_GRID_LEVEL) -> PLProfile:
    sampler = _Sampler(cover, threads)
    grid = initial_grid(cover, grid_level)
    sampler.many(grid)
    points = []
    for a, b in zip(grid, grid[1:]):
        points.extend(_between(sampler, a, b, 0, grid_cap))
    points.extend((r, sampler(r).depth) for r in grid)
    prof = PLProfile.from_points(points, cover.r0)
    prof.check()
    _check_against_forms(prof, sampler)
    return prof


def _between(sampler, a, b, depth, cap):
    """Extra vertices of the profile strictly inside (a, b)."""
    va, vb = sampler(a), sampler(b)
    da, db = va.depth, vb.depth
    if da == 0 and db == 0:
        return []
    if depth > cap:
        raise GridTooCoarse(f"refinement between {a} and {b} exceeded the cap {cap}")
    if da > 0 and db > 0:
        Ra = va.right_slope
        Lb = vb.left_slope
        secant = (db - da) / (b - a)
        if Ra == Lb:
            if secant != Ra:
                raise InternalInconsistency(f"equal tangents but curved profile on [{a}, {b}]")
            return []
        if Ra > Lb:
            raise InternalInconsistency(f"slopes decrease across [{a}, {b}]")
        c = ((db - Lb * b) - (da - Ra * a)) / (Ra - Lb)
        if not a <= c <= b:
            raise InternalInconsistency(f"tangent intersection {c} outside [{a}, {b}]")
        if c in (a, b):
            return []
        tangent = da + Ra * (c - a)
        return _confirm(sampler, a, b, c, tangent, depth, cap)
    if da == 0:
        Lb = vb.left_slope
        if Lb <= 0:
            raise InternalInconsistency(f"profile rises on [{a}, {b}] with slope {Lb}")
        z = b - db / Lb
        if z < a:
            raise InternalInconsistency(f"tangent at {b} crosses zero before {a}")
        if z == a:
            return []
        return _confirm(sampler, a, b, z, Fraction(0), depth, cap)
    Ra = va.right_slope
    if Ra >= 0:
        raise InternalInconsistency(f"profile falls to zero on [{a}, {b}] with slope {Ra}")
    z = a - da / Ra
    if z > b:
        raise InternalInconsistency(f"tangent at {a} stays positive past {b}")
    if z == b:
        return []
    return _confirm(sampler, a, b, z, Fraction(0), depth, cap)


def _confirm(sampler, a, b, c, predicted, depth, cap):
    got = sampler(c).depth
    if got == predicted:
        return [(c, got)]
    if got < predicted:
        raise InternalInconsistency(f"depth {got} below the tangent bound {predicted} at {c}")
    return (_between(sampler, a, c, depth + 1, cap) + [(c, got)]
            + _between(sampler, c, b, depth + 1, cap))


def _check_against_forms(prof, sampler):
    for r, v in sampler.cache.items():
        if v.depth == 0:
            continue
        if prof.value(r) != v.depth:
            raise InternalInconsistency(f"profile value mismatch at {r}")
        if r > prof.domain[0] and prof.left_slope(r) != v.left_slope:
            raise InternalInconsistency(f"left slope mismatch at {r}")
        if r < prof.domain[1] and prof.right_slope(r) != v.right_slope:
            raise InternalInconsistency(f"right slope mismatch at {r}")


def lambda_by_scan(profile: PLProfile, m) -> Fraction:
    best = Fraction(0)
    for i, s in enumerate(profile.slopes):
        if s < m:
            best = profile.breakpoints[i + 1][0]
    return best


# disk criteria

@dataclass
class DiskReport:
    r: Fraction
    branchCountInDisk: int
    leftSlope: Fraction
    isClosedDisk: bool
    criterionUsed: str
    depth: Fraction
    omegaCriterion: bool | None = None
    levels: list | None = None

    def to_json(self):
        from .io import rational_json
        out = {"r": rational_json(self.r), "branchCountInDisk": self.branchCountInDisk,
                "leftSlope": rational_json(self.leftSlope), "isClosedDisk": self.isClosedDisk,
                "criterionUsed": self.criterionUsed, "depth": rational_json(self.depth),
                "omegaCriterion": self.omegaCriterion}
        if self.levels is not None:
            out["levels"] = [lv.to_json() for lv in self.levels]
        return out


def closed_disk_at(cover: CoverSpec, r, profile: PLProfile | None = None,
                   assume_connected: bool | None = None) -> DiskReport:
    r = Fraction(r)
    if not 0 < r <= cover.r0:
        raise ValueError(f"radius {r} outside (0, r0]")
    connected = assume_connected if assume_connected is not None else cover.connected
    # a branched Z/p cover of a connected disk cannot split
    if cover.branch_count(r) == 0 and not connected:
        raise ConnectednessNotEstablished(
            f"no branch point in the closed disk at r={r}; connectedness must be asserted")
    if profile is None:
        profile = build_profile(cover)
    value = swan_at(cover, r)
    n = cover.branch_count(r)
    left = profile.left_slope(r)
    if left > n - 1:
        raise InternalInconsistency(f"left slope {left} exceeds |B[r]| - 1 = {n - 1}")
    closed = left == n - 1
    omega_ok = None
    tag = "left-slope"
    if value.depth > 0:
        if value.left_slope != left:
            raise InternalInconsistency("form slope disagrees with the profile")
        omega_ok = value.form.ord_at("inf") == n - 2
        if omega_ok != closed:
            raise InternalInconsistency("omega criterion disagrees with the slope criterion")
        tag = "left-slope+omega"
    return DiskReport(r, n, left, closed, tag, value.depth, omega_ok)


def specialize(cover: CoverSpec, r):
    """[(place, count)] of branch points in the finite residue line at radius r, plus the
    number that specialize to infinity."""
    r = Fraction(r)
    F = cover.cfg.F
    counts = {}
    at_inf = 0
    if cover.f_tilde_order_at_zero() % cover.p:
        counts[(0, 1)] = counts.get((0, 1), 0) + 1
    for x, _ in cover.branch:
        v = x.valuation()
        if v > r:
            P = (0, 1)
        elif v == r:
            P = (F.neg(x.leading_residue()), 1)
        else:
            at_inf += 1
            continue
        counts[P] = counts.get(P, 0) + 1
    return counts, at_inf


def vanishing_cycles_report(cover: CoverSpec, r, disk: DiskReport | None = None):
    r = Fraction(r)
    value = swan_at(cover, r)
    if value.depth == 0:
        return {"r": r, "skipped": "zero-depth"}
    p = cover.p
    form: Differential = value.form
    counts, at_inf = specialize(cover, r)
    places = dict((P, m) for P, m in form.finite_places())
    for P in counts:
        places.setdefault(P, 0)
    points = []
    for P in sorted(places, key=lambda t: (len(t), t)):
        ordP = form.ord_at(P)
        nb = counts.get(P, 0)
        num = (p - 1) * (ordP + nb)
        if num % 2 or num < 0:
            raise InternalInconsistency(f"delta at {P} is {Fraction(num, 2)}, not a nonnegative integer")
        points.append({"place": list(P), "ord": ordP, "branchNear": nb, "delta": num // 2})
    ord_inf = form.ord_at("inf")
    bound = -Fraction(2 * p * cover.genus, p - 1) - (cover.outside_bound + at_inf)
    if ord_inf < bound:
        raise InternalInconsistency(f"ord at infinity {ord_inf} below the bound {bound}")
    deg = form.degree_check()
    smooth = all(pt["delta"] == 0 for pt in points)
    if disk is not None and disk.isClosedDisk != smooth:
        raise InternalInconsistency("vanishing-cycle smoothness disagrees with the disk criterion")
    return {"r": r, "points": points, "ordInf": ord_inf, "ordInfBound": bound,
            "degree": deg, "allZero": smooth}
