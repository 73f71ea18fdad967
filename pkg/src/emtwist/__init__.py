"""Exact twisted tensor-product models of fibrations with fiber K(pi, n)."""

from .coeffs import CoeffGroup
from .errors import (
    BadCell,
    CompositionNonzero,
    EmTwistError,
    FormatError,
    MissingComponent,
    NotACocycle,
    SizeLimitExceeded,
    UnsupportedCoefficients,
    UnsupportedEnumeration,
)
from .linalg import HomologyGroup, SparseIntMatrix, homology_from_boundaries, kernel_enumeration_mod_m, smith_normal_form
from .emspace import EmCube, em_chain_complex, em_homology, enumerate_cubes, make_cube, normalized_ranks
from .base import BaseCochain, BaseComplex, coboundary, cohomologous, is_cocycle, prism, prism2, simplex_boundary
from .algebra import Algebra, AlgebraElement, beta, gauge_transform, kappa, twisting_cochain, u_element, v_element
from .model import TwistedModel, build_model, cup_product, model_homology, phi_action

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AlgebraElement",
    "BadCell",
    "BaseCochain",
    "BaseComplex",
    "CoeffGroup",
    "CompositionNonzero",
    "EmCube",
    "EmTwistError",
    "FormatError",
    "HomologyGroup",
    "MissingComponent",
    "NotACocycle",
    "SizeLimitExceeded",
    "SparseIntMatrix",
    "TwistedModel",
    "UnsupportedCoefficients",
    "UnsupportedEnumeration",
    "beta",
    "build_model",
    "coboundary",
    "cohomologous",
    "cup_product",
    "em_chain_complex",
    "em_homology",
    "enumerate_cubes",
    "gauge_transform",
    "homology_from_boundaries",
    "is_cocycle",
    "kappa",
    "kernel_enumeration_mod_m",
    "make_cube",
    "model_homology",
    "normalized_ranks",
    "phi_action",
    "prism",
    "prism2",
    "simplex_boundary",
    "smith_normal_form",
    "twisting_cochain",
    "u_element",
    "v_element",
]
