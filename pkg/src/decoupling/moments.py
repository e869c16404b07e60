"""Cross-moments of Wick monomials of two correlated standard normal vectors.

For ``Y`` (dimension ``p``) and ``Z`` (dimension ``q``), each with identity
covariance and cross-correlation ``R`` (``p x q``),

    E[:Y^k: :Z^l:] = sum_M k! l! prod_ij R_ij^M_ij / M_ij!

over nonnegative integer matrices ``M`` with row sums ``k`` and column sums
``l``. The moment vanishes unless ``|k| == |l|``. When ``R`` is diagonal
only diagonal ``M`` survive and the formula collapses to
:func:`cross_moment_diagonal`.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from math import factorial as _fact, sqrt
from typing import Sequence

import numpy as np

from .multiindex import MultiIndex, degree, enumerate_degree, factorial, padded_equal, power


@lru_cache(maxsize=None)
def _contingency(rows: MultiIndex, cols: MultiIndex) -> tuple[tuple[tuple[int, ...], ...], ...]:
    if not rows:
        return ((),) if not any(cols) else ()
    out = []
    for first in _row_fillings(rows[0], cols):
        rest = tuple(c - f for c, f in zip(cols, first))
        out.extend((first,) + tail for tail in _contingency(rows[1:], rest))
    return tuple(out)


def _row_fillings(total: int, caps: Sequence[int]):
    """Ways to write ``total`` as a vector bounded by ``caps``, lexicographic descending."""
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]), -1, -1):
        if total - first <= sum(caps[1:]):
            for rest in _row_fillings(total - first, caps[1:]):
                yield (first,) + rest


def enumerate_contingency(rows: Sequence[int], cols: Sequence[int]) -> list[np.ndarray]:
    """All nonnegative integer matrices with row sums ``rows`` and column sums ``cols``."""
    rows, cols = tuple(rows), tuple(cols)
    if degree(rows) != degree(cols):
        raise ValueError(f"margins disagree: |rows| = {degree(rows)}, |cols| = {degree(cols)}")
    return [np.array(m, dtype=int).reshape(len(rows), len(cols)) for m in _contingency(rows, cols)]


@lru_cache(maxsize=None)
def _moment_terms(k: MultiIndex, l: MultiIndex) -> tuple[np.ndarray, np.ndarray]:
    """Exponent table (one flattened ``M`` per row) and prefactors ``k! l! / prod M!``."""
    tables = _contingency(k, l)
    exps = np.array([[e for row in m for e in row] for m in tables], dtype=float)
    exps = exps.reshape(len(tables), len(k) * len(l))
    kl = factorial(k) * factorial(l)
    coef = np.array([kl / np.prod([_fact(e) for row in m for e in row]) for m in tables])
    exps.setflags(write=False)
    coef.setflags(write=False)
    return exps, coef


def cross_moment_general(k: Sequence[int], l: Sequence[int], r) -> float:
    """``E[:Y^k: :Z^l:]`` for cross-correlation matrix ``r`` (``len(k) x len(l)``)."""
    k, l = tuple(k), tuple(l)
    r = np.atleast_2d(np.asarray(r, dtype=float))
    if r.shape != (len(k), len(l)):
        raise ValueError(f"correlation block has shape {r.shape}, expected {(len(k), len(l))}")
    if degree(k) != degree(l):
        return 0.0
    if degree(k) == 0:
        return 1.0
    exps, coef = _moment_terms(k, l)
    return float(coef @ np.prod(r.ravel() ** exps, axis=1))


def cross_moment_diagonal(k: Sequence[int], l: Sequence[int], s: Sequence[float]) -> float:
    """``E[:Z1^k: :Z2^l:]`` when the cross-covariance is diagonal with entries ``s``.

    Indices of different lengths are compared after zero-padding. The value
    is ``m! * s^m`` for the common index ``m`` (truncated to ``len(s)``), and
    zero when the indices differ.
    """
    if not padded_equal(k, l):
        return 0.0
    short = tuple(k) if len(k) <= len(l) else tuple(l)
    m = len(s)
    if any(short[m:]):
        return 0.0
    head = short[:m] + (0,) * (m - len(short[:m]))
    return factorial(head) * power(s, head)


def cross_gram_block(r, n: int) -> np.ndarray:
    """Normalized degree-``n`` cross block ``E[b_k(Y) b_l(Z)]`` with ``b_k = :x^k: / sqrt(k!)``."""
    r = np.atleast_2d(np.asarray(r, dtype=float))
    ks = enumerate_degree(r.shape[0], n)
    ls = enumerate_degree(r.shape[1], n)
    out = np.empty((len(ks), len(ls)))
    for i, k in enumerate(ks):
        for j, l in enumerate(ls):
            out[i, j] = cross_moment_general(k, l, r) / sqrt(factorial(k) * factorial(l))
    return out


def diagonal_gram_block(s: Sequence[float], p: int, q: int, n: int) -> np.ndarray:
    """Normalized degree-``n`` cross block for a ``p x q`` diagonal cross-covariance."""
    ks = enumerate_degree(p, n)
    ls = enumerate_degree(q, n)
    out = np.empty((len(ks), len(ls)))
    for i, k in enumerate(ks):
        for j, l in enumerate(ls):
            out[i, j] = cross_moment_diagonal(k, l, s) / sqrt(factorial(k) * factorial(l))
    return out


def wick_rotation(w, n: int) -> np.ndarray:
    """Degree-``n`` change of basis induced by the linear map ``x -> w @ x``.

    Row ``k`` holds the coefficients of ``b_k(w @ Y)`` in the basis
    ``b_m(Y)``, ``b_k = :x^k: / sqrt(k!)``, ordered as ``enumerate_degree``.
    Wick ordering commutes with linear substitution when ``Y`` has identity
    covariance, so the coefficients come from expanding the ordinary
    polynomial ``prod_i (w_i . y)^k_i``. The matrix is orthogonal when ``w``
    is.
    """
    w = np.atleast_2d(np.asarray(w, dtype=float))
    d = w.shape[0]
    basis = enumerate_degree(d, n)
    pos = {m: j for j, m in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)))
    for i, k in enumerate(basis):
        poly = {(0,) * d: 1.0}
        for row, e in enumerate(k):
            for _ in range(e):
                nxt = defaultdict(float)
                for mono, c in poly.items():
                    for j in range(d):
                        if w[row, j] != 0.0:
                            bumped = mono[:j] + (mono[j] + 1,) + mono[j + 1:]
                            nxt[bumped] += c * w[row, j]
                poly = nxt
        for mono, c in poly.items():
            out[i, pos[mono]] = c * sqrt(factorial(mono) / factorial(k))
    return out
