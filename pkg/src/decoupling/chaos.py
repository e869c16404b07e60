"""Finite chaos expansions and exact second moments of their sums.

A function of vector ``a`` is stored as coefficients on the orthonormal
basis ``b_k(Y_a) = :Y_a^k: / sqrt(k!)``. Different total degrees are
orthogonal, so ``E[(sum_a phi_a)^2]`` splits into one quadratic form per
degree, ``c_n^T G_n c_n``, where ``G_n`` is the Gram matrix of all
degree-``n`` basis functions of all vectors (:func:`degree_gram`).
The extreme eigenvalues of ``G_n`` are the best constants for
expansions concentrated on degree ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, sqrt
from typing import Mapping, Sequence

import numpy as np

from .bounds import DecouplingConstants, theorem3_constants
from .errors import InvalidModel
from .gaussmodel import BlockGaussianSpec, assemble, require_valid, sample
from .hermite import wick_table
from .linalg import sym_eigenvalues
from .moments import cross_gram_block
from .multiindex import DEFAULT_MAX_DEGREE, MultiIndex, as_index, degree, enumerate_degree, factorial

MAX_BASIS = 512


class BasisTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ChaosExpansion:
    """``terms[a]`` maps multi-indices of vector ``a`` to coefficients."""

    terms: tuple[Mapping[MultiIndex, float], ...]

    def __post_init__(self):
        clean = []
        for a, coeffs in enumerate(self.terms):
            out = {}
            for k, c in coeffs.items():
                k = as_index(k)
                if degree(k) == 0:
                    raise InvalidModel(f"vector {a + 1}: degree-0 term {k} not allowed "
                                       f"(each function must have mean zero)")
                out[k] = out.get(k, 0.0) + float(c)
            clean.append(out)
        object.__setattr__(self, "terms", tuple(clean))

    @classmethod
    def zero(cls, n_vectors: int) -> "ChaosExpansion":
        return cls(tuple({} for _ in range(n_vectors)))

    @property
    def n_vectors(self) -> int:
        return len(self.terms)

    def degrees(self) -> list[int]:
        return sorted({degree(k) for t in self.terms for k, c in t.items() if c != 0.0})

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def check(self, spec: BlockGaussianSpec) -> None:
        if self.n_vectors != spec.n_vectors:
            raise InvalidModel(f"expansion has {self.n_vectors} vectors, model has {spec.n_vectors}")
        for a, t in enumerate(self.terms):
            for k in t:
                if len(k) != spec.dims[a]:
                    raise InvalidModel(f"vector {a + 1}: index {k} has length {len(k)}, "
                                       f"expected {spec.dims[a]}")

    def to_dict(self) -> dict:
        return {"vectors": [[{"index": list(k), "coeff": c} for k, c in t.items()] for t in self.terms]}


def norm_sq(phi: ChaosExpansion, a: int) -> float:
    """``E[phi_a^2]``: sum of squared coefficients."""
    if not 0 <= a < phi.n_vectors:
        raise IndexError(f"no vector {a} in a {phi.n_vectors}-vector expansion")
    return float(sum(c * c for c in phi.terms[a].values()))


@dataclass
class DegreeGram:
    degree: int
    basis: list[tuple[int, MultiIndex]]
    matrix: np.ndarray

    def position(self) -> dict[tuple[int, MultiIndex], int]:
        return {b: i for i, b in enumerate(self.basis)}


def basis_size(dims: Sequence[int], n: int) -> int:
    return sum(comb(n + d - 1, d - 1) for d in dims)


def degree_gram(spec: BlockGaussianSpec, n: int, max_basis: int | None = None,
                check: bool = True) -> DegreeGram:
    """Gram matrix of the degree-``n`` basis over all vectors.

    Basis order: vector ascending, then ``enumerate_degree`` order.
    """
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    size = basis_size(spec.dims, n)
    max_basis = MAX_BASIS if max_basis is None else max_basis
    if size > max_basis:
        raise BasisTooLarge(f"degree {n} basis has {size} functions, cap is {max_basis}")
    if check:
        require_valid(spec)
    basis = [(a, k) for a, d in enumerate(spec.dims) for k in enumerate_degree(d, n)]
    starts = np.cumsum([0] + [comb(n + d - 1, d - 1) for d in spec.dims])
    mat = np.eye(size)
    for a in range(spec.n_vectors):
        for b in range(a + 1, spec.n_vectors):
            if (a, b) not in spec.cross:
                continue
            blk = cross_gram_block(spec.cross[(a, b)], n)
            mat[starts[a]:starts[a + 1], starts[b]:starts[b + 1]] = blk
            mat[starts[b]:starts[b + 1], starts[a]:starts[a + 1]] = blk.T
    return DegreeGram(n, basis, mat)


def coefficient_vector(phi: ChaosExpansion, gram: DegreeGram) -> np.ndarray:
    pos = gram.position()
    out = np.zeros(len(gram.basis))
    for a, t in enumerate(phi.terms):
        for k, c in t.items():
            if degree(k) == gram.degree:
                out[pos[(a, k)]] = c
    return out


def per_degree_sum_norm_sq(spec: BlockGaussianSpec, phi: ChaosExpansion) -> dict[int, float]:
    phi.check(spec)
    require_valid(spec)
    out = {}
    for n in phi.degrees():
        gram = degree_gram(spec, n, check=False)
        c = coefficient_vector(phi, gram)
        out[n] = float(c @ gram.matrix @ c)
    return out


def sum_norm_sq_exact(spec: BlockGaussianSpec, phi: ChaosExpansion) -> float:
    """``E[(sum_a phi_a(Y_a))^2]`` computed from degree Gram matrices."""
    return float(sum(per_degree_sum_norm_sq(spec, phi).values()))


def degree_rayleigh_extremes(spec: BlockGaussianSpec, n: int) -> tuple[float, float]:
    lam = sym_eigenvalues(degree_gram(spec, n).matrix)
    return float(lam[-1]), float(lam[0])


@dataclass
class Verdict:
    sum_of_norms: float
    norm_of_sum: float
    lower: float
    upper: float
    ratio: float
    margin: float
    passed: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def verify_inequality(spec: BlockGaussianSpec, phi: ChaosExpansion, tol: float = 1e-9,
                      constants: DecouplingConstants | None = None) -> Verdict:
    """Evaluate both sides of the N-vector decoupling inequality exactly.

    ``margin`` is the smaller relative slack to either constant; it is
    negative when the sandwich is violated.
    """
    if constants is None:
        constants = theorem3_constants(spec)
    total = sum(norm_sq(phi, a) for a in range(phi.n_vectors))
    value = sum_norm_sq_exact(spec, phi)
    lo, hi = constants.lower, constants.upper
    if total > 0:
        ratio = value / total
        margin = min(ratio - lo, hi - ratio)
    else:
        ratio, margin = 1.0, float("inf")
    passed = lo * total - tol * total <= value <= hi * total + tol * total
    return Verdict(total, value, lo, hi, ratio, margin, passed)


def evaluate(phi: ChaosExpansion, spec: BlockGaussianSpec, points: np.ndarray) -> np.ndarray:
    """Values ``phi_a(Y_a)`` at stacked sample rows; shape ``(rows, N)``."""
    offsets = assemble(spec).offsets
    out = np.zeros((points.shape[0], phi.n_vectors))
    for a, t in enumerate(phi.terms):
        if not t:
            continue
        kmax = max(max(k) for k in t)
        cols = points[:, offsets[a]:offsets[a + 1]]
        table = wick_table(cols.T, kmax)  # (kmax+1, d, rows)
        for k, c in t.items():
            term = np.full(points.shape[0], c / sqrt(factorial(k)))
            for i, e in enumerate(k):
                if e:
                    term *= table[e, i]
            out[:, a] += term
    return out


@dataclass
class MCEstimate:
    samples: int
    seed: int
    norms: list[float]
    norms_se: list[float]
    sum_norm: float
    sum_norm_se: float
    exact_norms: list[float]
    exact_sum_norm: float
    z_scores: list[float] = field(default_factory=list)
    agree: bool = True

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _mean_se(x: np.ndarray) -> tuple[float, float]:
    if x.size == 0:
        return 0.0, 0.0
    se = float(np.std(x, ddof=1) / sqrt(x.size)) if x.size > 1 else 0.0
    return float(np.mean(x)), se


def mc_verify(spec: BlockGaussianSpec, phi: ChaosExpansion, samples: int, seed: int,
              n_se: float = 5.0) -> MCEstimate:
    """Monte Carlo estimates of each ``E[phi_a^2]`` and of ``E[(sum phi_a)^2]``.

    Disagreement with the exact values beyond ``n_se`` standard errors sets
    ``agree`` to False.
    """
    phi.check(spec)
    vals = evaluate(phi, spec, sample(spec, samples, seed))
    norms, ses = zip(*(_mean_se(vals[:, a] ** 2) for a in range(phi.n_vectors)))
    s_mean, s_se = _mean_se(vals.sum(axis=1) ** 2)
    exact = [norm_sq(phi, a) for a in range(phi.n_vectors)]
    exact_sum = sum_norm_sq_exact(spec, phi)
    z, agree = [], True
    for est, se, ex in zip(list(norms) + [s_mean], list(ses) + [s_se], exact + [exact_sum]):
        diff = abs(est - ex)
        z.append(diff / se if se > 0 else (0.0 if diff <= 1e-12 else float("inf")))
        agree = agree and diff <= n_se * se + 1e-12 * max(1.0, abs(ex))
    return MCEstimate(samples, seed, list(norms), list(ses), s_mean, s_se, exact, exact_sum, z, agree)


def random_expansion(spec: BlockGaussianSpec, degree_max: int, terms: int, seed: int) -> ChaosExpansion:
    """Per vector, ``terms`` distinct indices of degree 1..``degree_max`` with N(0, 1) coefficients.

    Indices are drawn uniformly without replacement from all candidates
    (all of them when there are fewer than ``terms``).
    """
    if degree_max < 1 or terms < 1:
        raise ValueError("degree_max and terms must be >= 1")
    if degree_max > DEFAULT_MAX_DEGREE:
        raise ValueError(f"degree_max is capped at {DEFAULT_MAX_DEGREE}")
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    for d in spec.dims:
        pool = [k for n in range(1, degree_max + 1) for k in enumerate_degree(d, n)]
        pick = rng.choice(len(pool), size=min(terms, len(pool)), replace=False)
        coeffs = rng.standard_normal(len(pick))
        out.append({pool[i]: float(c) for i, c in zip(sorted(pick), coeffs)})
    return ChaosExpansion(tuple(out))
