"""Glue-back construction of (Z_2)^m-manifolds from panel structures."""

from .complex import CornerComplex, Panel, PanelPermutation, ValidationReport, is_perfect, validate
from .errors import (ColoringError, ComplexError, DisconnectedBaseError, GuardExceeded,
                     LinearIndependenceError, NotPseudomanifoldError)
from .gf2 import GF2Matrix, GroupElement
from .glueback import (Coloring, CompositeColoring, GluedComplex, component_count_formula, components,
                       glue, is_free, lift_path, monodromy)
from .homology import euler, orientable_by_coloring, orientable_combinatorial, z2_betti
from .io import ParseError, load_complex, parse_coloring, parse_complex

__version__ = "0.1.0"

__all__ = [
    "CornerComplex", "Panel", "PanelPermutation", "ValidationReport", "is_perfect", "validate",
    "ColoringError", "ComplexError", "DisconnectedBaseError", "GuardExceeded",
    "LinearIndependenceError", "NotPseudomanifoldError",
    "GF2Matrix", "GroupElement",
    "Coloring", "CompositeColoring", "GluedComplex", "component_count_formula", "components",
    "glue", "is_free", "lift_path", "monodromy",
    "euler", "orientable_by_coloring", "orientable_combinatorial", "z2_betti",
    "ParseError", "load_complex", "parse_coloring", "parse_complex",
]
