"""Exact intersection theory of plane curve branches."""

from .bayer import BayerSet, bayer_set, min_universal, realize_intersection
from .charseq import CharSequence, parse_charseq, validate
from .contact import analyze_pair, congruence_check, sti_check
from .distance import DistanceWitness, realize_distance
from .field import QQ, FieldContext, FieldElement, field_context
from .oracle import dx, i0, intersection_number, logdist, resultant_y
from .series import BranchPoly, XSeries, YPoly, branch_from_terms
from .tower import BranchSpec, KeyTower, am_criterion, build_tower, verify_tower

__all__ = [
    "BayerSet", "bayer_set", "min_universal", "realize_intersection",
    "CharSequence", "parse_charseq", "validate",
    "analyze_pair", "congruence_check", "sti_check",
    "DistanceWitness", "realize_distance",
    "QQ", "FieldContext", "FieldElement", "field_context",
    "dx", "i0", "intersection_number", "logdist", "resultant_y",
    "BranchPoly", "XSeries", "YPoly", "branch_from_terms",
    "BranchSpec", "KeyTower", "am_criterion", "build_tower", "verify_tower",
]
