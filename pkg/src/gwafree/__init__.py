"""Exact computations with free modules over generalized Weyl algebras ``F[h](sigma, a)``."""

from .errors import MathError, ParseError
from .factored import FactoredElement, omega_pairs, omega_size, orbit_partition
from .gwa import GwaSpec, center_report, is_simple_ring, orbit_shift, orbit_size
from .kernels import BACKEND
from .polyring import GF, QQ, Field, Poly, Sigma, gcd, is_irreducible
from .rank1 import (
    Rank1Module,
    analyze,
    color_switch,
    composition_series,
    filtration_steps,
    hom_basis,
    is_simple,
    is_submodule,
    length,
    make_vp,
    maximal_submodules,
    socle,
)
from .rankn import (
    MatrixModule,
    PolyMatrix,
    construct_simple_vn,
    construct_sl2_family,
    make_matrix_module,
    set_equation,
    snf,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FactoredElement",
    "Field",
    "GF",
    "GwaSpec",
    "MathError",
    "MatrixModule",
    "ParseError",
    "Poly",
    "PolyMatrix",
    "QQ",
    "Rank1Module",
    "Sigma",
    "analyze",
    "center_report",
    "color_switch",
    "composition_series",
    "construct_simple_vn",
    "construct_sl2_family",
    "filtration_steps",
    "gcd",
    "hom_basis",
    "is_irreducible",
    "is_simple",
    "is_simple_ring",
    "is_submodule",
    "length",
    "make_matrix_module",
    "make_vp",
    "maximal_submodules",
    "socle",
    "omega_pairs",
    "omega_size",
    "orbit_partition",
    "orbit_shift",
    "orbit_size",
    "set_equation",
    "snf",
]
