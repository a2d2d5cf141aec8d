"""Finite families of covers: per-member lambda, minimizers, and kink-theorem checks."""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (AssumptionViolation, ConnectednessNotEstablished, InseparabilityUnverified,
                     InternalInconsistency, NotADiskBelow, SeriesMismatch, SwanKinkError,
                     TheoremViolated, UnsupportedSlope, WitnessInvalid)
from .profile import build_profile, closed_disk_at, lambda_by_scan
from .swan import CoverSpec, lambda_closed_form
from .towers import TowerSpec, m_diff, m_swan, tower_disk_decision

INF = float("inf")
VERIFY_GRID_DEPTH = 6


@dataclass
class FamilySpec:
    members: list  # [(id, CoverSpec | TowerSpec)]
    p: int
    s1: Fraction | float | None = None
    r0: Fraction = field(init=False)
    N: int = field(init=False)

    def __post_init__(self):
        if not self.members:
            raise AssumptionViolation("a family needs at least one member")
        ids = [mid for mid, _ in self.members]
        if len(set(ids)) != len(ids):
            raise AssumptionViolation("member ids must be distinct")
        covers = [c for _, c in self.members for c in _covers(c)]
        if any(c.p != self.p for c in covers):
            raise AssumptionViolation("members disagree on p")
        s2 = min((x.valuation() for c in covers for x, _ in c.branch), default=None)
        s1 = self.s1
        if s1 is None:
            if all(c.branch or c.f_tilde_order_at_zero() % c.p for c in covers):
                s1 = INF
            else:
                raise AssumptionViolation("s1 must be supplied for members without branch points")
        cands = [v for v in (s1, s2) if v is not None and v != INF]
        if not cands:
            raise AssumptionViolation("r0 is undetermined: no branch points and no finite s1")
        self.r0 = Fraction(min(cands))
        self.members = [(mid, _with_r0(c, self.r0, s1 != INF)) for mid, c in self.members]
        counts = {mid: _count(c, self.r0) for mid, c in self.members}
        if len(set(counts.values())) != 1:
            raise AssumptionViolation(f"branch counts differ across members: {counts}")
        self.N = next(iter(counts.values()))

    def member(self, mid):
        for k, c in self.members:
            if k == mid:
                return c
        raise KeyError(mid)


def _covers(c):
    if isinstance(c, CoverSpec):
        return [c]
    return [st.cover for st in c.steps if st.cover is not None]


def _with_r0(c, r0, connected):
    if isinstance(c, CoverSpec):
        conn = True if connected else c.connected
        return dataclasses.replace(c, r0=r0, connected=conn)
    return c


def _count(c, r):
    if isinstance(c, CoverSpec):
        return c.branch_count(r)
    return tuple(c.counts_at(r))


@dataclass
class MinimizerCertificate:
    gamma: Fraction
    argmin: list
    perMember: dict
    methods: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.argmin:
            raise InternalInconsistency("empty argmin")
        if self.gamma != min(self.perMember.values()):
            raise InternalInconsistency("gamma is not the minimum")

    def to_json(self):
        from .io import rational_json
        return {"gamma": rational_json(self.gamma), "argmin": list(self.argmin),
                "perMember": {k: rational_json(v) for k, v in self.perMember.items()},
                "methods": dict(self.methods),
                "errors": dict(self.errors)}


def _certificate(values, methods=None, errors=None):
    gamma = min(values.values())
    argmin = sorted(k for k, v in values.items() if v == gamma)
    return MinimizerCertificate(gamma, argmin, dict(sorted(values.items())),
                                dict(sorted((methods or {}).items())),
                                dict(sorted((errors or {}).items())))


def member_lambda(cover: CoverSpec, **kw):
    """(lambda, method tag).  Closed form and scan are both run when possible."""
    closed = None
    note = None
    try:
        closed = lambda_closed_form(cover)
    except (UnsupportedSlope, ConnectednessNotEstablished) as exc:
        note = type(exc).__name__
    try:
        scan = lambda_by_scan(build_profile(cover, **kw), cover.m)
    except SwanKinkError:
        if closed is None:
            raise
        return closed, "closed-form"
    if closed is None:
        return scan, f"scan ({note})"
    if closed != scan:
        raise InternalInconsistency(f"closed form {closed} differs from scan {scan}")
    return closed, "closed-form+scan"


def _map(fn, items, threads):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def family_lambda(family: FamilySpec, threads=1, **kw) -> MinimizerCertificate:
    def run(item):
        mid, c = item
        try:
            if isinstance(c, CoverSpec):
                return mid, member_lambda(c, **kw), None
            return mid, (_tower_lambda(c, family.r0, "diff", True, **kw), "diff-scan"), None
        except SwanKinkError as exc:
            return mid, None, exc

    values, methods, errors = {}, {}, {}
    for mid, res, exc in _map(run, family.members, threads):
        if exc is not None:
            errors[mid] = f"{type(exc).__name__}: {exc}"
            continue
        values[mid], methods[mid] = res
    if not values:
        raise InternalInconsistency(f"no member produced a lambda value: {errors}")
    return _certificate(values, methods, errors)


def _disk(c, r, cache=None, **kw):
    if isinstance(c, CoverSpec):
        cache = {} if cache is None else cache
        if id(c) not in cache:
            cache[id(c)] = build_profile(c, **kw)
        return closed_disk_at(c, r, cache[id(c)])
    return tower_disk_decision(c, r, **kw)


def _lambda_of(cert, mid):
    if mid not in cert.perMember:
        raise WitnessInvalid(f"member {mid} has no lambda value: {cert.errors.get(mid)}")
    return cert.perMember[mid]


def verification_grid(gamma, r0, depth=VERIFY_GRID_DEPTH):
    gamma, r0 = Fraction(gamma), Fraction(r0)
    pts = {r0}
    for j in range(1, depth + 1):
        step = (r0 - gamma) / 2 ** j
        pts.update(gamma + k * step for k in range(1, 2 ** j))
    return sorted(p for p in pts if gamma < p <= r0)


def kink_theorem_check(family: FamilySpec, witnesses, threads=1, grid_depth=VERIFY_GRID_DEPTH,
                       **kw) -> dict:
    cert = family_lambda(family, threads=threads, **kw)
    verdict = {"certificate": cert, "witnesses": [], "openDisk": None}
    profiles = {}
    if not witnesses:
        return verdict
    ws = []
    for r, mid in witnesses:
        if isinstance(r, float):
            raise WitnessInvalid(f"witness radius {r!r} must be an exact rational")
        ws.append((Fraction(r), mid))
    # the working field is extended so that e*r is integral at each witness
    for r, mid in sorted(ws, reverse=True):
        c = family.member(mid)
        if not 0 < r <= family.r0:
            raise WitnessInvalid(f"witness radius {r} outside (0, r0]")
        try:
            rep = _disk(c, r, profiles, **kw)
        except NotADiskBelow as exc:
            raise WitnessInvalid(f"witness ({r}, {mid}): {exc}") from exc
        if not rep.isClosedDisk:
            raise WitnessInvalid(f"preimage of D[{r}] for member {mid} is not a closed disk")
        lam = _lambda_of(cert, mid)
        if not lam < r:
            raise TheoremViolated(f"lambda({mid}) = {lam} is not below the witness radius {r}")
        verdict["witnesses"].append((r, mid, lam))
    # every argmin member: closed disks on a grid decreasing to gamma
    grid = verification_grid(cert.gamma, family.r0, grid_depth)
    for mid in cert.argmin:
        c = family.member(mid)
        for r in grid:
            if not _disk(c, r, profiles, **kw).isClosedDisk:
                raise TheoremViolated(f"member {mid} fails the disk check at {r} > gamma")
    verdict["openDisk"] = {"radius": cert.gamma, "members": list(cert.argmin),
                           "gridSize": len(grid)}
    return verdict


def _as_tower(c):
    return TowerSpec.single(c) if isinstance(c, CoverSpec) else c


def _tower_lambda(tower: TowerSpec, r0, mode, strict, **kw):
    tower = _as_tower(tower)
    if any(st.group != "Z/p" for st in tower.steps):
        raise SeriesMismatch("lambda_diff / lambda_Swan need a p-group tower")
    counts = tower.counts_at(r0)
    p = tower.p
    if strict:
        _check_inseparable(tower, **kw)
    if mode == "diff":
        prof = tower.berk_profile(**kw)
        target = m_diff(counts, p)
    elif mode == "swan":
        m = (tower.character or {}).get("m", 0)
        if len(tower.steps) > 1:
            for r in verification_grid(0, r0, 3):
                lower = TowerSpec(p, tower.steps[:-1])
                if not tower_disk_decision(lower, r, **kw).isClosedDisk:
                    raise NotADiskBelow(f"quotient tower is not a closed disk at r={r}")
        prof = tower.chi_profile(**kw)
        target = m_swan(counts, p, m)
    else:
        raise ValueError("mode must be 'diff' or 'swan'")
    if prof.domain[1] != r0:
        raise AssumptionViolation(f"profile domain ends at {prof.domain[1]}, expected r0 = {r0}")
    return lambda_by_scan(prof, target)


def _check_inseparable(tower, **kw):
    for i, st in enumerate(tower.steps):
        prof = tower.step_profile(i, **kw)
        for s, v in prof.breakpoints:
            if s > 0 and v == 0:
                raise InseparabilityUnverified(
                    f"step {i + 1} has depth 0 at level radius {s} (residually separable)")


def lambda_diff_swan(family: FamilySpec, mode="diff", strict=True, threads=1,
                     **kw) -> MinimizerCertificate:
    def run(item):
        mid, c = item
        return mid, _tower_lambda(c, family.r0, mode, strict, **kw)

    values = dict(_map(run, family.members, threads))
    return _certificate(values, {k: f"{mode}-scan" for k in values})
