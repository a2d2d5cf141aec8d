"""Acceptance criteria 1-9, each checked exactly and reported on one line.

Run under pytest, or directly with `python3 tests/test_acceptance.py`.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from corpus import corpus, min_gap, product_cover, profile_of, radius_grid, sample_radii  # noqa: E402
from swankink.elimination import default_scale, eliminate  # noqa: E402
from swankink.errors import WitnessInvalid  # noqa: E402
from swankink.families import FamilySpec, family_lambda, kink_theorem_check  # noqa: E402
from swankink.oracle import oracle_depth, product_coeffs  # noqa: E402
from swankink.profile import (build_profile, closed_disk_at, lambda_by_scan,  # noqa: E402
                              vanishing_cycles_report)
from swankink.series import LaurentSeries  # noqa: E402
from swankink.swan import (CoverSpec, lambda_closed_form, log_depth,  # noqa: E402
                           slope_divisibility_guard, swan_at)
from swankink.towers import (PLProfile, compose_differents, cyclic_depth_from_berk,  # noqa: E402
                             levels_from_index_counts, lin_combo_depth, m_swan, m_swan_cyclic)
from swankink.valued import INF, FieldConfig, LocalFieldElement  # noqa: E402

W = LocalFieldElement
Q = Fraction


def worked(x2=24):
    cfg = FieldConfig(3)
    return CoverSpec(cfg, 0, [(W.from_int(cfg, 3), 1), (W.from_int(cfg, x2), 1)])


# criteria: each returns (ok, detail)

def criterion_1():
    cov = worked()
    v = swan_at(cov, Q(1, 2))
    prof = build_profile(cov)
    zero_part = all(swan_at(cov, Q(k, 64)).depth == 0 for k in range(1, 17))
    checks = {
        "depth(1/2)=1/2": v.depth == Q(1, 2),
        "omega=2t^-3dt": v.form.to_str() == "(2*t^-3) dt",
        "zero on (0,1/4]": zero_part and prof.value(Q(1, 4)) == 0,
        "unique kink 1/4": prof.kinks == [Q(1, 4)],
        "lambda closed=1/4": lambda_closed_form(cov) == Q(1, 4),
        "lambda scan=1/4": lambda_by_scan(prof, cov.m) == Q(1, 4),
        "disk at 1/2": closed_disk_at(cov, Q(1, 2), prof).isClosedDisk,
        "no disk at 1/8": not closed_disk_at(cov, Q(1, 8), prof).isClosedDisk,
        "oracle 1/8": oracle_depth(product_coeffs([3, 24]), 3, Q(1, 8)) == 0,
        "oracle 1/2": oracle_depth(product_coeffs([3, 24]), 3, Q(1, 2)) == Q(1, 2),
    }
    bad = [k for k, ok in checks.items() if not ok]
    return not bad, f"{len(checks) - len(bad)}/{len(checks)} exact checks" + (f"; failed {bad}" if bad else "")


def _secant(cov, r, h):
    return (swan_at(cov, r).depth - swan_at(cov, r - h).depth) / h


def criterion_2():
    """Profile slopes and fresh secants both equal the form-derived slopes."""
    covers = corpus()
    failures, samples = [], 0
    for i, cov in enumerate(covers):
        prof = profile_of(i)
        h0 = min_gap(prof) / 8
        for r in sample_radii(prof):
            v = swan_at(cov, r)
            if v.depth == 0:
                continue
            samples += 1
            left, right = v.left_slope, v.right_slope
            if prof.left_slope(r) != left:
                failures.append((i, r, "profile-left"))
            if r < cov.r0 and prof.right_slope(r) != right:
                failures.append((i, r, "profile-right"))
            # secants at two offsets agree only on a linear piece; both must match
            sl = [(v.depth - swan_at(cov, r - h).depth) / h for h in (h0, h0 / 2)]
            if sl[0] != left or sl[1] != left:
                failures.append((i, r, "secant-left"))
            if r < cov.r0:
                h = min(h0, (cov.r0 - r) / 2)
                sr = [(swan_at(cov, r + k).depth - v.depth) / k for k in (h, h / 2)]
                if sr[0] != right or sr[1] != right:
                    failures.append((i, r, "secant-right"))
    ok = not failures and len(covers) >= 200
    return ok, f"{len(covers)} covers, {samples} positive-depth radii, {len(failures)} failures" + (
        f" e.g. {failures[:3]}" if failures else "")


def criterion_3():
    covers = corpus()
    failures, samples = [], 0
    for i, cov in enumerate(covers):
        prof = profile_of(i)
        for r in sample_radii(prof):
            samples += 1
            left = prof.left_slope(r)
            if left > cov.branch_count(r) - 1:
                failures.append((i, r, "bound"))
            v = swan_at(cov, r)
            if v.depth == 0:
                continue
            for s in (v.left_slope, v.right_slope):
                if s % cov.p == 0 and not (v.depth == log_depth(cov.p) and s == 0):
                    failures.append((i, r, "divisibility"))
            try:
                slope_divisibility_guard(v, v.left_slope)
                slope_divisibility_guard(v, v.right_slope)
            except Exception:
                failures.append((i, r, "guard"))
    return not failures, f"{len(covers)} covers, {samples} radii, {len(failures)} failures" + (
        f" e.g. {failures[:3]}" if failures else "")


def criterion_4():
    covers = corpus()
    failures, positive, closed_count = [], 0, 0
    for i, cov in enumerate(covers):
        prof = profile_of(i)
        for r in sample_radii(prof):
            v = swan_at(cov, r)
            disk = closed_disk_at(cov, r, prof)
            closed_count += disk.isClosedDisk
            if v.depth == 0:
                continue
            positive += 1
            if v.form.degree_check() != -2:
                failures.append((i, r, "degree"))
            rep = vanishing_cycles_report(cov, r)
            deltas = [pt["delta"] for pt in rep["points"]]
            if any(not isinstance(d, int) or d < 0 for d in deltas):
                failures.append((i, r, "delta"))
            if rep["allZero"] != disk.isClosedDisk:
                failures.append((i, r, "smooth-vs-disk"))
    return not failures, (f"{positive} positive-depth radii, {closed_count} closed disks, "
                          f"{len(failures)} failures" + (f" e.g. {failures[:3]}" if failures else ""))


def criterion_5(pairs=120, seed=5):
    rng = random.Random(seed)
    covers = corpus()
    by_p = {}
    for c in covers:
        by_p.setdefault(c.p, []).append(c)
    failures, equal_cases, n = [], 0, 0
    for _ in range(pairs):
        p = rng.choice(sorted(by_p))
        c1, c2 = rng.sample(by_p[p], 2)
        c3 = product_cover(c1, c2)
        m = rng.choice([k for k in range(2, 3 * p) if k % p])
        for r in rng.sample(radius_grid(c3.r0), 3):
            n += 1
            v1, v2, v3 = swan_at(c1, r), swan_at(c2, r), swan_at(c3, r)
            if v3.depth > max(v1.depth, v2.depth):
                failures.append(("max", r))
            if v1.depth != v2.depth:
                hi = v1 if v1.depth > v2.depth else v2
                if v3.depth != hi.depth or v3.form != hi.form:
                    failures.append(("dominant", r))
            elif v1.depth > 0 and not (v1.form + v2.form).is_zero():
                equal_cases += 1
                if v3.depth != v1.depth or v3.form != v1.form + v2.form:
                    failures.append(("sum", r))
            tw = swan_at(c1.power(m), r)
            if tw.depth != v1.depth or (v1.depth > 0 and tw.form != v1.form.scale(m)):
                failures.append(("twist", r))
    return not failures and pairs >= 100, (
        f"{pairs} pairs, {n} radii, {equal_cases} equal-depth sums, {len(failures)} failures"
        + (f" e.g. {failures[:3]}" if failures else ""))


def _capped(vals, side, p, r0):
    top = log_depth(p)
    out = {}
    for i, v in vals.items():
        cap = top + abs(i) * r0 if side < 0 else top
        out[i] = cap if v is None or v == INF else min(v, cap)
    return out


def _solvable_series(rng, p, side, s):
    """G = I0^p + R with R free of target degrees, so a root exists in the base field."""
    cfg = FieldConfig(p)
    top = p * s + 1
    b = [1] + [p ** (j if side < 0 else rng.randint(0, 1)) * rng.randint(-p * p, p * p)
               for j in range(1, s + 1)]
    noise = [0] + [0 if d % p == 0 else p ** (d if side < 0 else 0) * rng.randint(-p * p, p * p)
                   for d in range(1, top + 1)]
    make = LaurentSeries.from_tinv_poly if side < 0 else LaurentSeries.from_t_poly
    I0 = make(cfg, [W.from_int(cfg, c) for c in b])
    R = make(cfg, [W.from_int(cfg, c) for c in noise])
    return I0.pth_power() + R, (b, noise)


def criterion_6(n=60, seed=6):
    rng = random.Random(seed)
    failures, multi = [], 0
    for k in range(n):
        p = (2, 3, 5)[k % 3]
        side = -1 if k % 2 == 0 else 1
        s = rng.randint(1, 2)
        G, desc = _solvable_series(rng, p, side, s)
        try:
            first = eliminate(G, s, side, "first", auto_extend=True)
            last = eliminate(G, s, side, "last", auto_extend=True)
        except Exception as exc:  # noqa: BLE001 - any error is a failure here
            failures.append((k, type(exc).__name__, desc))
            continue
        multi += first.solutions > 1
        for res in (first, last):
            for d in res.targetDegrees:
                if not res.remainder.coeff(d).is_zero():
                    failures.append((k, "target", d))
        r0 = default_scale(G, side)
        if _capped(first.cValuations, side, p, r0) != _capped(last.cValuations, side, p, r0):
            failures.append((k, "cvals", desc))
    return not failures, (f"{n} series, {multi} with several roots, {len(failures)} failures"
                          + (f" e.g. {failures[:3]}" if failures else ""))


def _random_profile(rng, r0):
    xs = sorted({Fraction(rng.randint(1, 15), 16) * r0 for _ in range(rng.randint(1, 4))} | {r0})
    pts = [(Fraction(0), Fraction(rng.randint(0, 6), 4))]
    for x in xs:
        pts.append((x, max(Fraction(0), pts[-1][1] + Fraction(rng.randint(-2, 6), 3))))
    return PLProfile.from_points(pts, r0)


def criterion_7(n_profiles=200, n_counts=1000, seed=7):
    rng = random.Random(seed)
    failures = []
    for _ in range(n_profiles):
        p = rng.choice((2, 3, 5, 7))
        r0 = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        a, b, c = (_random_profile(rng, r0) for _ in range(3))
        if cyclic_depth_from_berk(a, b, p).breakpoints != lin_combo_depth([a, b], 0, 2, p).breakpoints:
            failures.append("lincombo")
        left = compose_differents([compose_differents([a, b]), c])
        right = compose_differents([a, compose_differents([b, c])])
        if left.breakpoints != right.breakpoints:
            failures.append("assoc")
        if compose_differents([a, b]).breakpoints != compose_differents([b, a]).breakpoints:
            failures.append("comm")
    for _ in range(n_counts):
        p = rng.choice((2, 3, 5, 7, 11))
        counts = [rng.randint(0, 5) for _ in range(rng.randint(1, 5))]
        counts[0] = max(counts[0], 1)
        if m_swan(levels_from_index_counts(counts, p), p, 0) != m_swan_cyclic(counts):
            failures.append(("mswan", tuple(counts), p))
    return not failures, (f"{n_profiles} profile triples, {n_counts} count vectors, "
                          f"{len(failures)} failures")


def criterion_8():
    fam = FamilySpec([("a", worked(24)), ("b", worked(12))], 3)
    cert = family_lambda(fam)
    ok = cert.gamma == Q(1, 4) and cert.argmin == ["a"] and cert.perMember == {"a": Q(1, 4), "b": Q(1)}
    verdict = kink_theorem_check(fam, [(Q(1, 2), "a"), (Q(3, 8), "a"), (Q(5, 16), "a")])
    od = verdict["openDisk"]
    ok = ok and od is not None and od["radius"] == Q(1, 4) and od["members"] == ["a"]
    rejected = False
    try:
        kink_theorem_check(fam, [(Q(1, 8), "a")])
    except WitnessInvalid:
        rejected = True
    ok = ok and rejected
    return ok, (f"gamma={cert.gamma}, argmin={cert.argmin}, open disk of radius "
                f"{od['radius'] if od else None}, witness 1/8 rejected={rejected}")


def criterion_9(n_covers=6, seed=9):
    rng = random.Random(seed)
    cfg = FieldConfig(2)
    t0 = time.perf_counter()
    checks, failures = 0, []
    for _ in range(n_covers):
        xs = rng.sample(range(10, 100, 2), 2)
        cov = CoverSpec(cfg, 0, [(W.from_int(cfg, x), 1) for x in xs])
        r0 = cov.r0
        radii = ([r0 * Fraction(k, 8) for k in range(1, 8)]
                 + [r0 / 3, 2 * r0 / 3, 9 * r0 / 10])[:10]
        for r in radii:
            checks += 1
            if swan_at(cov, r).depth != oracle_depth(product_coeffs(xs), 2, r):
                failures.append((tuple(xs), r))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60 and checks == 10 * n_covers
    return ok, f"{checks} radii on {n_covers} covers, {len(failures)} mismatches, {elapsed:.1f} s"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9]


def _line(k, ok, detail):
    return f"ACCEPTANCE {k}: {'PASS' if ok else 'FAIL'} - {detail}"


@pytest.mark.parametrize("k", range(1, 10))
def test_acceptance(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    line = _line(k, ok, detail)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = []
    for k, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        results.append(ok)
        print(_line(k, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
