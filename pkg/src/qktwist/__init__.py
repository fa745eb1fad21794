"""Exact twisted quantum K-theory on CP^(n-1)."""
from .scalars import EqScalar, ScalarError, ScalarRing
from .cyclotomic import CycloElem, CycRep, regular_rep, trace_generator
from .series import TruncatedSeries, series_exp
from .kring import KClass, KRing, adams, chi, dual_basis, euler_class, pair_twisted
from .qcalc import (
    LaurentPoly, LimitError, QRat, expand_at, limit_at_one, project_minus,
    project_plus, residue_bracket,
)
from .twistkit import (
    TwistData, TwistError, box, box_log, box_symmetry_check, dilaton_vector,
    kappa_ratio, pairing_twist, psi_dilaton_check, sector_box_relation,
    sector_geometric_identity, serre_dual, serre_relation_check,
)
from .loopspace import LoopPoint, apply_box, omega_inf, omega_r
from .lefschetz import (
    LineSummand, NovSeries, i_cotangent, j_small, lefschetz_transform,
    noneq_limit, telescoping_check,
)
from .hrr import CohClass, ch, chi_fake, td_tangent
from .expr import ParseError, parse_qrat, render

__version__ = "0.1.0"

__all__ = [
    "EqScalar",
    "ScalarError",
    "ScalarRing",
    "CycloElem",
    "CycRep",
    "regular_rep",
    "trace_generator",
    "TruncatedSeries",
    "series_exp",
    "KClass",
    "KRing",
    "adams",
    "chi",
    "dual_basis",
    "euler_class",
    "pair_twisted",
    "LaurentPoly",
    "LimitError",
    "QRat",
    "expand_at",
    "limit_at_one",
    "project_minus",
    "project_plus",
    "residue_bracket",
    "TwistData",
    "TwistError",
    "box",
    "box_log",
    "box_symmetry_check",
    "dilaton_vector",
    "kappa_ratio",
    "pairing_twist",
    "psi_dilaton_check",
    "sector_box_relation",
    "sector_geometric_identity",
    "serre_dual",
    "serre_relation_check",
    "LoopPoint",
    "apply_box",
    "omega_inf",
    "omega_r",
    "LineSummand",
    "NovSeries",
    "i_cotangent",
    "j_small",
    "lefschetz_transform",
    "noneq_limit",
    "telescoping_check",
    "CohClass",
    "ch",
    "chi_fake",
    "td_tangent",
    "ParseError",
    "parse_qrat",
    "render",
]
