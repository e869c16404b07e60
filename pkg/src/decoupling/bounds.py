"""Decoupling constants.

* one vector with correlated components: extreme eigenvalues of its
  correlation matrix;
* two vectors: ``1 -+ s*`` with ``s*`` the top singular value of the cross
  block;
* ``N`` vectors: ``1 -+ sigma0`` with ``sigma0`` the top eigenvalue of the
  hollow matrix of pairwise top singular values. The lower constant may be
  negative and is reported as is.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import InvalidModel
from .gaussmodel import PSD_TOL, BlockGaussianSpec, require_valid
from .linalg import check_symmetric, max_eigenvalue, singular_values, sym_eigenvalues


class Theorem(str, Enum):
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"


@dataclass
class DecouplingConstants:
    theorem: Theorem
    lower: float
    upper: float
    sigma0: float | None = None
    sstar: np.ndarray | None = None
    pair_singulars: dict[tuple[int, int], float] = field(default_factory=dict)

    @property
    def informative_lower(self) -> float:
        """``max(lower, 0)``: squared norms are nonnegative anyway."""
        return max(self.lower, 0.0)

    def to_dict(self) -> dict:
        out = {"theorem": self.theorem.value, "lower": self.lower, "upper": self.upper,
               "informative_lower": self.informative_lower}
        if self.sigma0 is not None:
            out["sigma0"] = self.sigma0
        if self.sstar is not None:
            out["sstar"] = self.sstar.tolist()
        if self.pair_singulars:
            out["pair_singulars"] = [{"a": a + 1, "b": b + 1, "s": s}
                                     for (a, b), s in sorted(self.pair_singulars.items())]
        return out


def theorem1_constants(corr) -> DecouplingConstants:
    try:
        corr = check_symmetric(corr)
    except ValueError as exc:
        raise InvalidModel(str(exc)) from None
    if not np.allclose(np.diag(corr), 1.0, rtol=0.0, atol=1e-12):
        raise InvalidModel("correlation matrix must have unit diagonal")
    lam = sym_eigenvalues(corr)
    if lam[-1] < -PSD_TOL:
        raise InvalidModel(f"correlation matrix is not positive semidefinite: "
                           f"minimum eigenvalue {lam[-1]:.6g}")
    return DecouplingConstants(Theorem.T1, float(lam[-1]), float(lam[0]))


def theorem2_constants(r) -> DecouplingConstants:
    r = np.atleast_2d(np.asarray(r, dtype=float))
    spec = BlockGaussianSpec(r.shape, {(0, 1): r})
    require_valid(spec)
    s = float(singular_values(r)[0])
    return DecouplingConstants(Theorem.T2, 1.0 - s, 1.0 + s, pair_singulars={(0, 1): s})


def pair_max_singular(spec: BlockGaussianSpec, a: int, b: int) -> float:
    if a == b:
        raise ValueError("pair_max_singular needs two distinct vectors")
    return float(singular_values(spec.block(a, b))[0])


def build_sstar(spec: BlockGaussianSpec) -> np.ndarray:
    """Hollow symmetric matrix of pairwise top singular values."""
    require_valid(spec)
    n = spec.n_vectors
    out = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            out[a, b] = out[b, a] = pair_max_singular(spec, a, b)
    return out


def theorem3_constants(spec: BlockGaussianSpec) -> DecouplingConstants:
    sstar = build_sstar(spec)
    sigma0 = max_eigenvalue(sstar)
    pairs = {(a, b): float(sstar[a, b]) for a in range(spec.n_vectors) for b in range(a + 1, spec.n_vectors)}
    return DecouplingConstants(Theorem.T3, 1.0 - sigma0, 1.0 + sigma0, sigma0, sstar, pairs)
