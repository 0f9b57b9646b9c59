"""Cellular minimal free resolutions of powers of square-free monomial ideals
of projective dimension one, built from a supporting tree."""

from .cubes import assemble_complex
from .koszul import koszul_strand
from .monomial import parse_ideal
from .resolution import betti_numbers, homogenize
from .tree import build_support_tree
from .verify import certify

__version__ = "0.1.0"

__all__ = [
    "assemble_complex",
    "betti_numbers",
    "build_support_tree",
    "certify",
    "homogenize",
    "koszul_strand",
    "parse_ideal",
]
