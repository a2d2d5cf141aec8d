from fractions import Fraction as Q

import pytest

from swankink.errors import ConnectednessNotEstablished
from swankink.profile import (PLProfile, build_profile, closed_disk_at, lambda_by_scan, specialize,
                              vanishing_cycles_report)
from swankink.swan import CoverSpec, swan_at
from swankink.valued import FieldConfig, LocalFieldElement as W

C3 = FieldConfig(3)


def cover(xs, alpha0=0):
    return CoverSpec(C3, alpha0, [(W.from_int(C3, x), 1) for x in xs])


@pytest.fixture(scope="module")
def worked():
    c = cover([3, 24])
    return c, build_profile(c)


def test_worked_profile(worked):
    c, prof = worked
    assert prof.breakpoints == [(0, 0), (Q(1, 4), 0), (1, Q(3, 2))]
    assert prof.kinks == [Q(1, 4)]
    for r in (Q(1, 3), Q(1, 2), Q(7, 8)):
        assert prof.value(r) == 2 * r - Q(1, 2) == swan_at(c, r).depth
    assert prof.left_slope(Q(1, 4)) == 0 and prof.right_slope(Q(1, 4)) == 2
    prof.check()


def test_constant_profiles():
    c = CoverSpec.genuine(C3, [(W.from_int(C3, 3), 1), (W.from_int(C3, 24), 1)], alpha0=1)
    prof = build_profile(c)
    assert prof.kinks == [] and {v for _, v in prof.breakpoints} == {Q(3, 2)}
    single = CoverSpec(C3, 1, [], r0=1)
    assert build_profile(single).kinks == []


def test_lambda_by_scan(worked):
    _, prof = worked
    assert lambda_by_scan(prof, 2) == Q(1, 4)
    flat = PLProfile.constant(Q(1, 2), Q(1))
    assert lambda_by_scan(flat, 1) == 1
    assert lambda_by_scan(flat, 0) == 0


def test_from_points_merges_collinear():
    prof = PLProfile.from_points([(0, 0), (Q(1, 4), 0), (Q(1, 2), Q(1, 2)), (1, Q(3, 2))], 1)
    assert prof.breakpoints == [(0, 0), (Q(1, 4), 0), (1, Q(3, 2))]


def test_closed_disk(worked):
    c, prof = worked
    rep = closed_disk_at(c, Q(1, 2), prof)
    assert rep.isClosedDisk and rep.leftSlope == 2 and rep.branchCountInDisk == 3
    assert rep.omegaCriterion is True
    assert not closed_disk_at(c, Q(1, 8), prof).isClosedDisk


def test_open_disk_limit(worked):
    c, prof = worked
    assert all(closed_disk_at(c, Q(1, 4) + Q(1, 2 ** k), prof).isClosedDisk for k in range(2, 7))
    assert not closed_disk_at(c, Q(1, 4), prof).isClosedDisk


def test_connectedness_needed_without_branch_points():
    c = CoverSpec(C3, 0, [], unit_u=None, r0=1)
    with pytest.raises(ConnectednessNotEstablished):
        closed_disk_at(c, Q(1, 2))


def test_vanishing_cycles(worked):
    c, _ = worked
    rep = vanishing_cycles_report(c, Q(1, 2))
    assert rep["points"] == [{"place": [0, 1], "ord": -3, "branchNear": 3, "delta": 0}]
    assert rep["degree"] == -2 and rep["allZero"]
    assert vanishing_cycles_report(c, Q(1, 8)) == {"r": Q(1, 8), "skipped": "zero-depth"}
    log = vanishing_cycles_report(CoverSpec.genuine(C3, [], alpha0=1, r0=1), Q(1, 2))
    assert log["points"] == [{"place": [0, 1], "ord": -1, "branchNear": 1, "delta": 0}]


def test_specialize(worked):
    c, _ = worked
    assert specialize(c, Q(1, 2)) == ({(0, 1): 3}, 0)
    near, at_inf = specialize(c, Q(1))
    assert sum(near.values()) == 3 and at_inf == 0
