import random
from fractions import Fraction as Q

import pytest

from swankink.errors import AssumptionViolation, DomainMismatch, NotADiskBelow, SeriesMismatch
from swankink.profile import PLProfile, build_profile
from swankink.swan import CoverSpec
from swankink.towers import (TowerSpec, TowerStep, berk_from_depth, compose_differents,
                             cyclic_depth_from_berk, depth_from_berk, eval_e1, levels_from_index_counts,
                             lin_combo_coefficients, lin_combo_depth, m_diff, m_swan, m_swan_cyclic,
                             solvable_structure_check, tame_disk_predicate, tame_invariance,
                             tower_disk_decision)
from swankink.valued import FieldConfig, LocalFieldElement as W

C3 = FieldConfig(3)
const = PLProfile.constant


def worked_cover():
    return CoverSpec(C3, 0, [(W.from_int(C3, 3), 1), (W.from_int(C3, 24), 1)])


def test_berk_scaling():
    assert berk_from_depth(const(Q(3, 2), 1), 3).breakpoints == const(1, 1).breakpoints
    berk = berk_from_depth(build_profile(worked_cover()), 3)
    for r in (Q(1, 4), Q(1, 2), Q(3, 4)):
        assert berk.value(r) == (4 * r - 1) / 3
    zero = const(0, 1)
    assert berk_from_depth(zero, 3).breakpoints == zero.breakpoints
    assert depth_from_berk(berk, 3).breakpoints == build_profile(worked_cover()).breakpoints


def test_compose():
    z = const(0, 1)
    assert compose_differents([z, z]).breakpoints == z.breakpoints
    assert compose_differents([const(Q(1, 2), 1), const(Q(1, 3), 1)]).value(Q(1, 2)) == Q(5, 6)
    berk = berk_from_depth(build_profile(worked_cover()), 3)
    assert compose_differents([berk, z]).breakpoints == berk.breakpoints
    with pytest.raises(DomainMismatch):
        compose_differents([const(0, 1), const(0, 2)])


def test_cyclic_and_lin_combo():
    a, b = const(Q(1, 2), 1), const(Q(1, 3), 1)
    assert cyclic_depth_from_berk(a, b, 3).value(Q(1, 2)) == 1
    assert cyclic_depth_from_berk(a, const(0, 1), 3).breakpoints == a.breakpoints
    assert lin_combo_coefficients(3, 0, 1) == [Q(3, 2)]
    assert lin_combo_coefficients(3, 0, 2) == [1, Q(3, 2)]
    assert lin_combo_depth([a, b], 0, 2, 3).value(Q(1, 2)) == 1
    with pytest.raises(SeriesMismatch):
        lin_combo_depth([a], 0, 2, 3)


def test_target_slopes():
    assert m_diff([3], 3) == Q(4, 3)
    assert m_diff([1], 3) == 0
    assert m_diff([1, 3], 3) == Q(4, 9)
    assert m_swan_cyclic([2, 1]) == 2
    for N in range(1, 6):
        assert m_swan([N], 3, 0) == N - 1 == m_swan_cyclic([N])
    assert levels_from_index_counts([1, 0], 3) == [1, 1]
    assert m_swan([1, 1], 3, 0) == 0


def test_m_swan_identity_random():
    rng = random.Random(3)
    for _ in range(300):
        p = rng.choice((2, 3, 5, 7))
        counts = [rng.randint(0, 5) for _ in range(rng.randint(1, 4))]
        counts[0] = max(1, counts[0])
        assert m_swan(levels_from_index_counts(counts, p), p, 0) == m_swan_cyclic(counts)


def test_tame():
    assert tame_disk_predicate(1) and not tame_disk_predicate(2)
    assert tame_invariance({"a": 1, "b": 1})["isDisk"]
    with pytest.raises(AssumptionViolation):
        tame_invariance({"a": 1, "b": 2})


def test_solvable_structure():
    assert solvable_structure_check([{"group": "Z/p"}, {"group": "Z/p"}], 3)
    assert solvable_structure_check([{"group": "Z/l", "l": 2}], 3)
    assert not solvable_structure_check([{"group": "A5"}], 3)
    assert not solvable_structure_check([{"group": "Z/p"}, {"group": "Z/l", "l": 2}], 3)


def test_eval_e1():
    assert eval_e1(0, 0, 0, 1, 3, 2) == -1
    assert eval_e1(2, 2, 0, 0, 3, 2) == 0
    assert eval_e1(3, 0, 0, 2, 3, 2) == -1


def test_tower_single_worked():
    rep = tower_disk_decision(TowerSpec.single(worked_cover()), Q(1, 2))
    assert rep.isClosedDisk
    assert rep.leftSlope == Q(4, 3)


def test_tower_two_levels():
    top = TowerStep(profile=PLProfile.from_points([(0, 0), (Q(1, 3), Q(2, 3))], Q(1, 3)),
                    branch_counts=3)
    tower = TowerSpec(3, [TowerStep(cover=worked_cover()), top])
    rep = tower_disk_decision(tower, Q(1, 2))
    assert rep.isClosedDisk and rep.leftSlope == Q(16, 9)
    assert "L1" in rep.criterionUsed and "L2" in rep.criterionUsed


def test_tame_bottom_blocks():
    tower = TowerSpec(3, [TowerStep(group="Z/l", ell=2, branch_counts=2),
                          TowerStep(cover=worked_cover())])
    with pytest.raises(NotADiskBelow):
        tower_disk_decision(tower, Q(1, 2))
