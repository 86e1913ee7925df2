"""Rook-Brauer and Motzkin diagram algebras and exact Tor computations."""

from .algebra import (
    FAMILIES,
    MOTZKIN,
    ROOK_BRAUER,
    SYMMETRIC,
    AlgebraMorphism,
    BasedAlgebra,
    BasedModule,
    build_algebra,
    inclusion_morphism,
    projection_morphism,
    regular_module,
    trivial_module,
)
from .bar import BarComplex, bar_complex
from .diagrams import Diagram, ScaledDiagram, format_diagram, make_diagram, multiply, parse_diagram
from .linalg import BACKEND, ChainComplex, HomologyGroup, SparseMatrix, homology_at, smith_normal_form
from .rings import GF, QQ, ZZ, NotAUnitError, Params, Ring, Zmod, parse_element, parse_ring
from .tor import induced_map_on_tor, shapiro_check, tor, tor_vanishing_JX

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FAMILIES",
    "GF",
    "MOTZKIN",
    "QQ",
    "ROOK_BRAUER",
    "SYMMETRIC",
    "ZZ",
    "AlgebraMorphism",
    "BarComplex",
    "BasedAlgebra",
    "BasedModule",
    "ChainComplex",
    "Diagram",
    "HomologyGroup",
    "NotAUnitError",
    "Params",
    "Ring",
    "ScaledDiagram",
    "SparseMatrix",
    "Zmod",
    "bar_complex",
    "build_algebra",
    "format_diagram",
    "homology_at",
    "inclusion_morphism",
    "induced_map_on_tor",
    "make_diagram",
    "multiply",
    "parse_diagram",
    "parse_element",
    "parse_ring",
    "projection_morphism",
    "regular_module",
    "shapiro_check",
    "smith_normal_form",
    "tor",
    "tor_vanishing_JX",
    "trivial_module",
]
