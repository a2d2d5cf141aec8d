"""Quick invariant suites behind `swankink selfcheck`."""

from __future__ import annotations

import random
from fractions import Fraction

from . import io
from .errors import SwanKinkError
from .oracle import oracle_depth, product_coeffs
from .profile import build_profile, closed_disk_at, lambda_by_scan, vanishing_cycles_report
from .swan import CoverSpec, lambda_closed_form, slope_divisibility_guard, swan_at
from .towers import (cyclic_depth_from_berk, levels_from_index_counts, lin_combo_depth, m_swan,
                     m_swan_cyclic, PLProfile)
from .valued import FieldConfig, LocalFieldElement


def worked_cover(x2=24):
    cfg = FieldConfig(3)
    pts = [(LocalFieldElement.from_int(cfg, 3), 1), (LocalFieldElement.from_int(cfg, x2), 1)]
    return CoverSpec(cfg, 0, pts)


def random_cover(rng, p, max_branch=4):
    cfg = FieldConfig(p)
    k = rng.randint(1, max_branch)
    xs = set()
    while len(xs) < k:
        xs.add(p ** rng.randint(1, 2) * rng.randint(1, p * p))
    branch = [(LocalFieldElement.from_int(cfg, x), rng.randint(1, p - 1)) for x in sorted(xs)]
    return CoverSpec.genuine(cfg, branch, alpha0=rng.randint(0, p - 1))


def _check_worked():
    cov = worked_cover()
    prof = build_profile(cov)
    v = swan_at(cov, Fraction(1, 2))
    ok = (v.depth == Fraction(1, 2) and v.form.to_str() == "(2*t^-3) dt"
          and prof.kinks == [Fraction(1, 4)] and lambda_by_scan(prof, 2) == Fraction(1, 4)
          and lambda_closed_form(cov) == Fraction(1, 4)
          and closed_disk_at(cov, Fraction(1, 2), prof).isClosedDisk
          and not closed_disk_at(cov, Fraction(1, 8), prof).isClosedDisk)
    return ok, "worked cover p=3, branch {3, 24}"


def _check_oracle():
    cfg = FieldConfig(2)
    bad = []
    for xs in ([2, 4], [6, 10, 12], [4, 8, 14]):
        cov = CoverSpec(cfg, 0, [(LocalFieldElement.from_int(cfg, x), 1) for x in xs])
        for r in (cov.r0 / 4, cov.r0 / 2, cov.r0):
            if swan_at(cov, r).depth != oracle_depth(product_coeffs(xs), 2, r):
                bad.append((xs, str(r)))
    return not bad, f"oracle mismatches: {bad}"


def _check_profiles(n=12, seed=7):
    rng = random.Random(seed)
    for _ in range(n):
        p = rng.choice((2, 3, 5))
        cov = random_cover(rng, p, 3)
        prof = build_profile(cov)
        for r, _v in prof.breakpoints:
            if r == 0:
                continue
            v = swan_at(cov, r)
            left = prof.left_slope(r)
            if left > cov.branch_count(r) - 1:
                return False, f"slope bound fails at {r}"
            if v.depth > 0:
                if v.left_slope != left:
                    return False, f"left slope mismatch at {r}"
                if r < prof.domain[1] and v.right_slope != prof.right_slope(r):
                    return False, f"right slope mismatch at {r}"
                slope_divisibility_guard(v, left)
                rep = closed_disk_at(cov, r, prof, assume_connected=True)
                vanishing_cycles_report(cov, r, rep)
    return True, f"{n} random covers"


def _check_towers(n=200, seed=11):
    rng = random.Random(seed)
    for _ in range(n):
        p = rng.choice((2, 3, 5, 7))
        counts = [rng.randint(0, 4) for _ in range(rng.randint(1, 4))]
        counts[0] = max(counts[0], 1)
        levels = levels_from_index_counts(counts, p)
        if m_swan(levels, p, 0) != m_swan_cyclic(counts):
            return False, f"m_Swan identity fails for {counts}, p={p}"
    a = PLProfile.constant(Fraction(1, 2), 1)
    b = PLProfile.constant(Fraction(1, 3), 1)
    if cyclic_depth_from_berk(a, b, 3).breakpoints != lin_combo_depth([a, b], 0, 2, 3).breakpoints:
        return False, "cyclic and linear-combination formulas disagree"
    return True, f"{n} count vectors"


def _check_roundtrip():
    cov = worked_cover()
    data = io.cover_json(cov)
    back = io.parse_cover(data)
    ok = io.cover_json(back) == data
    prof = build_profile(cov)
    io.validate(prof.to_json(), io.OUTPUT_SCHEMAS["profile"])
    return ok, "cover JSON round trip"


CHECKS = [("worked-cover", _check_worked), ("oracle", _check_oracle),
          ("profile-invariants", _check_profiles), ("tower-identities", _check_towers),
          ("json-roundtrip", _check_roundtrip)]


def run_selfcheck():
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except SwanKinkError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append({"name": name, "ok": bool(ok), "detail": detail})
    return {"checks": out}
