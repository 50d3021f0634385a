"""Guillotine subdivisions as a model of tensor products of free operads.

The cut operad: numbered subdivisions of the unit d-cube by equally spaced,
labelled hyperplane cuts, with a canonical normal form that decides
equality modulo the interchange law.
"""

from .enumeration import (CountTable, ShapeGenerator, count_by_enumeration, count_by_recurrence,
                          crosscheck, enumerate_shapes)
from .errors import (AmbiguousRootError, BudgetExceeded, CutOperadError, ParseError,
                     SignatureError, StructureError)
from .geometry import GeomForm, from_geom, geom_admissible_roots, geom_equal, to_geom
from .operad import Permutation, act, compose, generator, partial_compose
from .signature import Signature, binary_signature, make_signature
from .subdivision import (LEAF, Cut, LabelledSubdivision, Node, admissible_roots, canonicalize,
                          from_json, to_json, to_sexpr)
from .terms import (FreeAlgebraElement, canonical_term, equivalent, evaluate, free_mult,
                    parse_term)

__version__ = "0.1.0"

__all__ = [
    "LEAF", "AmbiguousRootError", "BudgetExceeded", "CountTable", "Cut", "CutOperadError",
    "FreeAlgebraElement", "GeomForm", "LabelledSubdivision", "Node", "ParseError",
    "Permutation", "ShapeGenerator", "Signature", "SignatureError", "StructureError", "act",
    "admissible_roots", "binary_signature", "canonical_term", "canonicalize", "compose",
    "count_by_enumeration", "count_by_recurrence", "crosscheck", "enumerate_shapes",
    "equivalent", "evaluate", "free_mult", "from_geom", "from_json", "generator",
    "geom_admissible_roots", "geom_equal", "make_signature", "parse_term", "partial_compose",
    "to_geom", "to_json", "to_sexpr",
]
