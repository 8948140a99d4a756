"""J-characteristics, symmetry and integer-hull dimensions for orthogonal arrays."""

from .anova import JVector, SignedJVector, anova_transform, congruence_report, signed_j_transform
from .arrays import FrequencyVector, OAParams, ParameterError, SymbolArray, array_to_frequency
from .dims import DimReport, candidate_dims, compute_omega, constraint_family
from .ild import build_ild_J, build_ild_marginal, check_equivalence, emit
from .oracle import affine_dimension, certify, enumerate_all, vanishing_blocks

__all__ = [
    "FrequencyVector", "OAParams", "ParameterError", "SymbolArray", "array_to_frequency",
    "JVector", "SignedJVector", "anova_transform", "congruence_report", "signed_j_transform",
    "DimReport", "candidate_dims", "compute_omega", "constraint_family",
    "build_ild_J", "build_ild_marginal", "check_equivalence", "emit",
    "affine_dimension", "certify", "enumerate_all", "vanishing_blocks",
]
