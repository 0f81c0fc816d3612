"""Numerical toolkit for two integrable open two-species exclusion processes:
matrix constructors, algebraic identity checks, exact spectra, and the
homogeneous functional-relation parameterizations of the eigenvalues with
their root equations."""

from .params import ModelParams, PRESETS, load_params_file
from .model import (
    MultiKVariant,
    markov_generator,
    k_minus,
    k_plus,
    r_matrix,
    multispecies_k_minus,
    boundary_builder,
    single_species_objects,
    scalar_kernels,
)
from .fusion import transfer, fused_transfer, projector, monodromy, r_tilde, fused_k
from .linalg import kron, partial_trace, partial_transpose, invert, eigen, poly_fit, PolyMatrix

__all__ = [
    "ModelParams",
    "PRESETS",
    "load_params_file",
    "MultiKVariant",
    "markov_generator",
    "k_minus",
    "k_plus",
    "r_matrix",
    "multispecies_k_minus",
    "boundary_builder",
    "single_species_objects",
    "scalar_kernels",
    "transfer",
    "fused_transfer",
    "projector",
    "monodromy",
    "r_tilde",
    "fused_k",
    "kron",
    "partial_trace",
    "partial_transpose",
    "invert",
    "eigen",
    "poly_fit",
    "PolyMatrix",
]

__version__ = "0.1.0"
