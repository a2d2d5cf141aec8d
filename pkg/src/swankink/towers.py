"""Differents and Swan conductors through towers of Z/p and tame cyclic steps.

Every p-step carries a depth profile in its own level coordinate s; with
deg(phi) the degree of the tower below that step, base radius r and s are
related by r = deg(phi) * s, so level slopes are divided by deg(phi) when
they are read as functions of r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (AssumptionViolation, DomainMismatch, InternalInconsistency, NotADiskBelow,
                     SeriesMismatch)
from .profile import DiskReport, PLProfile, build_profile, closed_disk_at
from .swan import CoverSpec


class BerkProfile(PLProfile):
    """A PLProfile holding the Berkovich different r -> delta^Berk(r)."""


def _same_domain(profiles):
    doms = {p.domain for p in profiles}
    if len(doms) > 1:
        raise DomainMismatch(f"profiles live on different domains: {sorted(doms)}")


def linear_combination(profiles, coeffs, cls=PLProfile):
    """sum c_i * profile_i on the union of the breakpoints."""
    if not profiles:
        raise ValueError("need at least one profile")
    _same_domain(profiles)
    rs = sorted({r for prof in profiles for r, _ in prof.breakpoints})
    pts = [(r, sum(Fraction(c) * prof.value(r) for c, prof in zip(coeffs, profiles))) for r in rs]
    return cls.from_points(pts, profiles[0].r0)


def berk_from_depth(depth: PLProfile, p: int) -> BerkProfile:
    return linear_combination([depth], [Fraction(p - 1, p)], BerkProfile)


def depth_from_berk(berk: PLProfile, p: int) -> PLProfile:
    return linear_combination([berk], [Fraction(p, p - 1)])


def compose_differents(step_profiles) -> BerkProfile:
    return linear_combination(list(step_profiles), [1] * len(step_profiles), BerkProfile)


def cyclic_depth_from_berk(berk_zx: PLProfile, berk_yz: PLProfile, p: int) -> PLProfile:
    return linear_combination([berk_zx, berk_yz], [1, Fraction(p, p - 1)])


def lin_combo_coefficients(p: int, m: int, n: int):
    if n < 1 or m < 0:
        raise SeriesMismatch("need n >= 1 and m >= 0")
    return [Fraction(p ** m)] * (n - 1) + [Fraction(p ** (m + 1), p - 1)]


def lin_combo_depth(berk_steps, m: int, n: int, p: int) -> PLProfile:
    if len(berk_steps) != n:
        raise SeriesMismatch(f"{len(berk_steps)} step profiles for a series of length {n}")
    return linear_combination(list(berk_steps), lin_combo_coefficients(p, m, n))


def m_diff(branch_counts, p: int) -> Fraction:
    return sum((Fraction((p - 1) * (b - 1), p ** i) for i, b in enumerate(branch_counts, start=1)),
               Fraction(0))


def m_swan(branch_counts, p: int, m: int, n: int | None = None) -> Fraction:
    n = len(branch_counts) if n is None else n
    if len(branch_counts) != n or n < 1:
        raise SeriesMismatch("need one branch count per level")
    head = sum((Fraction((p - 1) * (b - 1), p ** i)
                for i, b in enumerate(branch_counts[:-1], start=1)), Fraction(0))
    return p ** m * (head + Fraction(branch_counts[-1] - 1, p ** (n - 1)))


def m_swan_cyclic(branch_by_index) -> int:
    return sum(branch_by_index) - 1


def levels_from_index_counts(branch_by_index, p: int):
    """|B_i[r]| = sum_{j <= i} |B^j[r]| * p^(j-1)."""
    out, acc = [], 0
    for j, b in enumerate(branch_by_index, start=1):
        acc += b * p ** (j - 1)
        out.append(acc)
    return out


def tame_disk_predicate(branch_count: int) -> bool:
    return branch_count == 1


def tame_invariance(family_counts) -> dict:
    counts = dict(family_counts) if not isinstance(family_counts, dict) else family_counts
    values = set(counts.values())
    if len(values) != 1:
        raise AssumptionViolation(f"branch counts vary across the family: {sorted(values)}")
    (n,) = values
    return {"count": n, "isDisk": tame_disk_predicate(n), "members": sorted(counts)}


def eval_e1(delta_y, delta_z, delta_x, branch_near, p: int, n: int) -> Fraction:
    if n < 2:
        raise ValueError("the formula needs n >= 2")
    return (Fraction(2, p ** (n - 1) * (p - 1)) * (Fraction(delta_y) - Fraction(delta_z))
            - 2 * Fraction(delta_x) - branch_near)


def solvable_structure_check(group_data, p: int | None = None) -> bool:
    """Composition factors, bottom step first, as {"group": "Z/p"|"Z/l"|..., "l": ell}.

    True when the data describe a p-group extended by a cyclic prime-to-p
    group: every factor has prime order, tame factors come first (they form
    the quotient), and repeated tame primes need "tameCyclic": true.
    """
    if isinstance(group_data, dict):
        p = group_data.get("p", p)
        factors = group_data.get("factors", group_data.get("steps", []))
        tame_cyclic = group_data.get("tameCyclic", False)
    else:
        factors, tame_cyclic = group_data, False
    seen_p = False
    tame_primes = []
    for fac in factors:
        g = fac.get("group") if isinstance(fac, dict) else fac
        if g == "Z/p":
            seen_p = True
        elif g == "Z/l":
            ell = fac.get("l")
            if ell is None or ell == p or seen_p:
                return False
            tame_primes.append(ell)
        else:
            return False
    if len(set(tame_primes)) != len(tame_primes) and not tame_cyclic:
        return False
    return True


# towers

@dataclass
class TowerStep:
    group: str = "Z/p"  # "Z/p" or "Z/l"
    ell: int | None = None
    cover: CoverSpec | None = None
    profile: PLProfile | None = None  # depth profile in level coordinates
    branch_counts: object = None  # int, or {base radius: count}

    def __post_init__(self):
        if self.group not in ("Z/p", "Z/l"):
            raise AssumptionViolation(f"unknown step group {self.group}")
        if self.group == "Z/l" and self.branch_counts is None:
            raise AssumptionViolation("a tame step needs branch counts")
        if self.group == "Z/p" and self.cover is None and (self.profile is None
                                                          or self.branch_counts is None):
            raise AssumptionViolation("an abstract Z/p step needs a profile and branch counts")

    def count_at(self, r, s):
        if self.cover is not None:
            return self.cover.branch_count(s)
        bc = self.branch_counts
        if isinstance(bc, int):
            return bc
        r = Fraction(r)
        if r not in bc:
            raise AssumptionViolation(f"no branch count supplied at r={r}")
        return bc[r]


@dataclass
class TowerSpec:
    p: int
    steps: list
    character: dict | None = None  # {"m": int, "subgroupInSeries": bool}
    _profiles: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.steps:
            raise AssumptionViolation("a tower needs at least one step")
        for st in self.steps:
            if st.group == "Z/l" and (st.ell is None or st.ell == self.p or st.ell < 2):
                raise AssumptionViolation("tame steps need a degree prime to p")
            if st.cover is not None and st.cover.p != self.p:
                raise AssumptionViolation("cover characteristic differs from the tower's p")
        if self.character is not None:
            if not self.character.get("subgroupInSeries", True):
                raise SeriesMismatch("the composition series must pass through H")
            if any(st.group != "Z/p" for st in self.steps):
                raise SeriesMismatch("characters are supported on p-group towers only")

    @classmethod
    def single(cls, cover: CoverSpec):
        return cls(cover.p, [TowerStep(cover=cover)])

    def degrees(self):
        """Degree of the tower below each step."""
        out, deg = [], 1
        for st in self.steps:
            out.append(deg)
            deg *= self.p if st.group == "Z/p" else st.ell
        return out

    def step_profile(self, i, grid_cap=12, threads=1):
        st = self.steps[i]
        if st.profile is not None:
            return st.profile
        if i not in self._profiles:
            self._profiles[i] = build_profile(st.cover, grid_cap=grid_cap, threads=threads)
        return self._profiles[i]

    def berk_steps(self, **kw):
        """Per p-step Berkovich different as a function of the base radius."""
        out = []
        for i, (st, deg) in enumerate(zip(self.steps, self.degrees())):
            if st.group != "Z/p":
                continue
            prof = self.step_profile(i, **kw)
            pts = [(deg * s, Fraction(self.p - 1, self.p) * v) for s, v in prof.breakpoints]
            out.append(BerkProfile.from_points(pts, deg * prof.r0))
        return out

    def berk_profile(self, **kw) -> BerkProfile:
        return compose_differents(self.berk_steps(**kw))

    def chi_profile(self, **kw) -> PLProfile:
        steps = self.berk_steps(**kw)
        m = (self.character or {}).get("m", 0)
        return lin_combo_depth(steps, m, len(steps), self.p)

    def counts_at(self, r):
        r = Fraction(r)
        return [st.count_at(r, r / deg) for st, deg in zip(self.steps, self.degrees())
                if st.group == "Z/p"]


@dataclass
class TowerLevel:
    level: int
    group: str
    branchCount: int
    isClosedDisk: bool
    criterion: str
    slope: Fraction | None = None
    target: Fraction | None = None

    def to_json(self):
        from .io import rational_json
        return {"level": self.level, "group": self.group, "branchCount": self.branchCount,
                "isClosedDisk": self.isClosedDisk, "criterion": self.criterion,
                "slope": None if self.slope is None else rational_json(self.slope),
                "target": None if self.target is None else rational_json(self.target)}


def tower_disk_decision(tower: TowerSpec, r, **kw) -> DiskReport:
    r = Fraction(r)
    p = tower.p
    levels = []
    berk_slope = Fraction(0)
    target = Fraction(0)
    contributions = []
    depth = Fraction(0)
    n_top = 0
    for i, (st, deg) in enumerate(zip(tower.steps, tower.degrees()), start=1):
        if levels and not levels[-1].isClosedDisk:
            raise NotADiskBelow(f"level {i - 1} is not a closed disk at r={r}; "
                                f"higher levels are not decided")
        s = r / deg
        if st.group == "Z/l":
            n = st.count_at(r, s)
            levels.append(TowerLevel(i, "Z/l", n, tame_disk_predicate(n), "tame-count"))
            n_top = n
            continue
        if st.cover is not None:
            prof = tower.step_profile(i - 1, **kw)
            rep = closed_disk_at(st.cover, s, prof)
            local_left, n, depth = rep.leftSlope, rep.branchCountInDisk, rep.depth
        else:
            prof = st.profile
            local_left, n, depth = prof.left_slope(s), st.count_at(r, s), prof.value(s)
        tag = "mdiff" if depth > 0 else "mdiff(separable-residue)"
        step_slope = Fraction(p - 1, p) * local_left / deg
        step_target = Fraction((p - 1) * (n - 1), p * deg)
        contributions.append((step_slope, step_target))
        berk_slope += step_slope
        target += step_target
        if berk_slope > target:
            raise InternalInconsistency(f"different slope {berk_slope} exceeds m_diff {target} "
                                        f"at level {i}")
        levels.append(TowerLevel(i, "Z/p", n, berk_slope == target, tag, berk_slope, target))
        n_top = n
    closed = levels[-1].isClosedDisk
    tags = [f"L{lv.level}:{lv.criterion}" for lv in levels]
    if tower.character is not None:
        m = tower.character.get("m", 0)
        coeffs = lin_combo_coefficients(p, m, len(contributions))
        chi_slope = sum(c * b for c, (b, _) in zip(coeffs, contributions))
        chi_target = sum(c * t for c, (_, t) in zip(coeffs, contributions))
        if (chi_slope == chi_target) != closed:
            raise InternalInconsistency("Swan-conductor criterion disagrees with the different")
        tags.append("chi:mswan")
    return DiskReport(r, n_top, berk_slope, closed, ";".join(tags), depth, levels=levels)
