"""Exact Swan-conductor profiles and kink radii for Z/p covers of p-adic disks."""

from .errors import *  # noqa: F401,F403
from .families import (FamilySpec, MinimizerCertificate, family_lambda, kink_theorem_check,
                       lambda_diff_swan)
from .profile import (DiskReport, PLProfile, build_profile, closed_disk_at, lambda_by_scan,
                      vanishing_cycles_report)
from .series import LaurentSeries, TailCertificate
from .swan import (CoverSpec, SwanValue, combine, lambda_closed_form, mu, swan_at, swan_split,
                   slope_divisibility_guard)
from .elimination import EliminationResult, eliminate
from .towers import (BerkProfile, TowerSpec, TowerStep, berk_from_depth, compose_differents,
                     cyclic_depth_from_berk, eval_e1, lin_combo_depth, m_diff, m_swan,
                     m_swan_cyclic, solvable_structure_check, tame_disk_predicate,
                     tame_invariance, tower_disk_decision)
from .valued import FieldConfig, LocalFieldElement, extend_field
from .roots import find_roots
from .residue import Differential, RationalFunction

__version__ = "0.1.0"
