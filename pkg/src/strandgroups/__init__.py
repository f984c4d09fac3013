"""Exact computations in one-dimensional exchange-statistics groups.

Families: ``S`` (symmetric), ``T`` (traid), ``F`` (fraid) and ``W`` (free
Coxeter), on the interval or, as wreath extensions ``Z^N x| G``, on the ring.
"""

from .abelian import abelianization, enumerate_characters, smith_normal_form
from .coxeter import (
    ElementHandle,
    build_coxeter_matrix,
    cayley_ball,
    elements_equal,
    is_reduced,
    normal_form_shortlex,
    tits_matrix,
)
from .errors import StrandGroupError
from .ring import WreathElement, distinguished, verify_affine_presentation, wreath_multiply
from .trajectory import Trajectory, compile_loop, validate
from .words import Presentation, Word, free_reduce, parse_word, permutation_image

__version__ = "0.1.0"

__all__ = [
    "ElementHandle",
    "Presentation",
    "StrandGroupError",
    "Word",
    "Trajectory",
    "WreathElement",
    "abelianization",
    "build_coxeter_matrix",
    "cayley_ball",
    "compile_loop",
    "distinguished",
    "elements_equal",
    "enumerate_characters",
    "free_reduce",
    "is_reduced",
    "normal_form_shortlex",
    "parse_word",
    "permutation_image",
    "smith_normal_form",
    "tits_matrix",
    "validate",
    "verify_affine_presentation",
    "wreath_multiply",
]
