"""Wick powers (probabilists' Hermite polynomials) and Gauss-Hermite rules.

``wick_power(k, x)`` is ``He_k(x)``, generated by
``exp(a*x - a**2/2) = sum_k a**k He_k(x) / k!``. For a standard normal
``X``, ``E[He_k(X) He_l(X)] = k! * delta_kl``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .linalg import jacobi_eigh

MAX_NODES = 64


def wick_power(k: int, x):
    """``He_k(x)`` by the three-term recurrence; ``x`` may be an array."""
    if k < 0:
        raise ValueError(f"degree must be >= 0, got {k}")
    x = np.asarray(x, dtype=float)
    prev, cur = np.ones_like(x), x.copy()
    if k == 0:
        return prev if prev.ndim else float(prev)
    for j in range(1, k):
        prev, cur = cur, x * cur - j * prev
    return cur if cur.ndim else float(cur)


def wick_table(x, kmax: int) -> np.ndarray:
    """Stack ``[He_0(x), ..., He_kmax(x)]`` along a new leading axis."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = x
    for j in range(1, kmax):
        out[j + 1] = x * out[j] - j * out[j - 1]
    return out


def wick_monomial(x: Sequence[float], k: Sequence[int]):
    """Product of ``He_{k_i}(x_i)`` over coordinates.

    ``x`` may carry extra leading axes (e.g. a batch of samples as rows);
    its last axis must match ``len(k)``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (len(k),):
        raise ValueError(f"length mismatch: x has shape {x.shape}, index has length {len(k)}")
    out = np.ones(x.shape[:-1])
    for i, e in enumerate(k):
        if e:
            out = out * wick_power(e, x[..., i])
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for expectations under the standard normal law."""

    nodes: np.ndarray
    weights: np.ndarray

    def expect(self, f) -> float:
        return float(np.sum(self.weights * f(self.nodes)))


def gauss_hermite(m: int) -> QuadratureRule:
    """``m``-point rule, exact for polynomials of degree ``<= 2m - 1``.

    Golub-Welsch: the nodes are the eigenvalues of the Jacobi matrix of the
    He recurrence and the weights are the squared first components of the
    normalized eigenvectors.
    """
    if not 1 <= m <= MAX_NODES:
        raise ValueError(f"node count must be in [1, {MAX_NODES}], got {m}")
    off = np.sqrt(np.arange(1, m, dtype=float))
    jac = np.diag(off, 1) + np.diag(off, -1)
    values, vectors = jacobi_eigh(jac)
    order = np.argsort(values)
    nodes = values[order]
    weights = vectors[0, order] ** 2
    # exact symmetry about zero
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    weights = weights / weights.sum()
    return QuadratureRule(nodes, weights)


def tensor_rule(rule: QuadratureRule, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor-product nodes (``m**dim`` rows x ``dim``) and weights."""
    grids = np.meshgrid(*([rule.nodes] * dim), indexing="ij")
    wgrids = np.meshgrid(*([rule.weights] * dim), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1)
    weights = np.prod(np.stack([w.ravel() for w in wgrids], axis=1), axis=1)
    return nodes, weights
