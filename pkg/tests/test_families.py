from fractions import Fraction as Q

import pytest

from swankink.errors import AssumptionViolation, InseparabilityUnverified, WitnessInvalid
from swankink.families import (FamilySpec, family_lambda, kink_theorem_check, lambda_diff_swan,
                               member_lambda, verification_grid)
from swankink.swan import CoverSpec
from swankink.valued import FieldConfig, LocalFieldElement as W

C3 = FieldConfig(3)


def cover(xs, alpha0=0):
    pts = [(W.from_int(C3, x), 1) for x in xs]
    return CoverSpec.genuine(C3, pts, alpha0=alpha0) if alpha0 else CoverSpec(C3, 0, pts)


@pytest.fixture(scope="module")
def family():
    return FamilySpec([("a", cover([3, 24])), ("b", cover([3, 12]))], 3)


def test_member_lambda_methods_agree():
    value, tag = member_lambda(cover([3, 24]))
    assert value == Q(1, 4) and "closed" in tag and "scan" in tag


def test_family_minimum(family):
    cert = family_lambda(family)
    assert cert.gamma == Q(1, 4)
    assert cert.argmin == ["a"]
    assert cert.perMember == {"a": Q(1, 4), "b": 1}


def test_singleton():
    cert = family_lambda(FamilySpec([("only", cover([3, 12]))], 3))
    assert cert.argmin == ["only"] and cert.gamma == 1


def test_alpha0_family_is_constant():
    fam = FamilySpec([("x", cover([3, 24], 1)), ("y", cover([3, 12], 1))], 3)
    cert = family_lambda(fam)
    assert cert.gamma == fam.r0 and cert.argmin == ["x", "y"]


def test_mixed_branch_counts_rejected():
    with pytest.raises(AssumptionViolation):
        FamilySpec([("a", cover([3, 24])), ("c", cover([3, 6, 12, 24]))], 3)


def test_kink_theorem(family):
    v = kink_theorem_check(family, [(Q(1, 2), "a"), (Q(3, 8), "a"), (Q(5, 16), "a")])
    assert v["openDisk"]["radius"] == Q(1, 4) and v["openDisk"]["members"] == ["a"]
    assert [w[2] for w in v["witnesses"]] == [Q(1, 4)] * 3
    empty = kink_theorem_check(family, [])
    assert empty["openDisk"] is None and empty["certificate"].gamma == Q(1, 4)
    with pytest.raises(WitnessInvalid):
        kink_theorem_check(family, [(Q(1, 8), "a")])
    with pytest.raises(WitnessInvalid):
        kink_theorem_check(family, [(0.5, "a")])


def test_verification_grid():
    grid = verification_grid(Q(1, 4), Q(1), depth=2)
    assert grid[0] > Q(1, 4) and grid[-1] == 1
    assert grid == sorted(set(grid))


def test_lambda_diff_swan():
    fam = FamilySpec([("a", cover([3, 24]))], 3)
    with pytest.raises(InseparabilityUnverified):
        lambda_diff_swan(fam, "diff")
    assert lambda_diff_swan(fam, "diff", strict=False).gamma == Q(1, 4)
    assert lambda_diff_swan(fam, "swan", strict=False).gamma == Q(1, 4)


def test_lambda_diff_matches_scan_on_inseparable_member():
    # depth is positive on all of (0, r0]: alpha0 != 0
    fam = FamilySpec([("z", cover([3, 24], 1))], 3)
    assert lambda_diff_swan(fam, "diff").gamma == family_lambda(fam).gamma
