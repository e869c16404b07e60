"""Decoupling inequalities for sums of functions of correlated Gaussian vectors."""
from .bounds import (DecouplingConstants, build_sstar, pair_max_singular, theorem1_constants,
                     theorem2_constants, theorem3_constants)
from .chaos import (ChaosExpansion, DegreeGram, degree_gram, degree_rayleigh_extremes, mc_verify,
                    norm_sq, random_expansion, sum_norm_sq_exact, verify_inequality)
from .errors import InvalidModel, ParseError
from .gaussmodel import BlockGaussianSpec, assemble, random_spec, sample, validate
from .linalg import NotPositiveSemidefinite

__all__ = [
    "BlockGaussianSpec", "ChaosExpansion", "DecouplingConstants", "DegreeGram", "InvalidModel",
    "NotPositiveSemidefinite", "ParseError", "assemble", "build_sstar", "degree_gram",
    "degree_rayleigh_extremes", "mc_verify", "norm_sq", "pair_max_singular", "random_expansion",
    "random_spec", "sample", "sum_norm_sq_exact", "theorem1_constants", "theorem2_constants",
    "theorem3_constants", "validate", "verify_inequality",
]
