"""Steiner triple systems without parallel classes: construction, certification, search."""

__version__ = "0.1.0"

from .construct import Role, TripleSystem, build_construction, construct_sts
from .cover import find_parallel_class, solve
from .group import AdmissibilityError, GroupElement, GroupSpec
from .ntheory import enumerate_V, in_P, in_V, mult_order
from .verify import certify_no_parallel_class, check_sts

__all__ = [
    "AdmissibilityError",
    "GroupElement",
    "GroupSpec",
    "Role",
    "TripleSystem",
    "build_construction",
    "certify_no_parallel_class",
    "check_sts",
    "construct_sts",
    "enumerate_V",
    "find_parallel_class",
    "in_P",
    "in_V",
    "mult_order",
    "solve",
]
