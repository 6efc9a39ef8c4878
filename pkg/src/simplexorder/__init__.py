"""Dihedral-angle comparison of simplexes in spherical, Euclidean and
hyperbolic space."""

from .comparisons import (
    hyperbolic_incenter,
    m1_euclidean_from_spherical,
    m2_euclidean_from_hyperbolic,
    m3_bracket,
    m4_rigidity_witness,
)
from .errors import (
    BallTooLarge,
    DegenerateRay,
    DegenerateSimplex,
    InputError,
    NumericalFailure,
    PreconditionViolated,
    SimplexOrderError,
    SingularSystem,
)
from .models import Geometry, ModelPoint, min_enclosing_spherical_ball
from .numeric import DEFAULT_TOL, TolerancePolicy
from .simplex import (
    DihedralAngles,
    GramClass,
    GramMatrix,
    Order,
    Simplex,
    classify_gram,
    compare,
    dihedral_angles,
    gram_of,
    realize,
    spherical_dual,
)
from .specio import parse_simplex_spec, to_spec

__version__ = "0.1.0"

__all__ = [
    "BallTooLarge", "DEFAULT_TOL", "DegenerateRay", "DegenerateSimplex", "DihedralAngles",
    "Geometry", "GramClass", "GramMatrix", "InputError", "ModelPoint", "NumericalFailure",
    "Order", "PreconditionViolated", "Simplex", "SimplexOrderError", "SingularSystem",
    "TolerancePolicy", "classify_gram", "compare", "dihedral_angles", "gram_of",
    "hyperbolic_incenter", "m1_euclidean_from_spherical", "m2_euclidean_from_hyperbolic",
    "m3_bracket", "m4_rigidity_witness", "min_enclosing_spherical_ball", "parse_simplex_spec",
    "realize", "spherical_dual", "to_spec",
]
