"""Dense symmetric eigensolver, singular values and a semidefinite Cholesky.

The eigensolver is a cyclic Jacobi method. Each sweep visits every index
pair once using a round-robin (tournament) ordering, so the ``n // 2``
rotations of a round touch disjoint pairs and are applied together as one
orthogonal similarity. The ordering is fixed, which keeps results
reproducible for a given input.
"""
from __future__ import annotations

import numpy as np

SYMMETRY_TOL = 1e-12
OFFDIAG_TOL = 1e-13
MAX_SWEEPS = 30


class NotSymmetric(ValueError):
    pass


class NotPositiveSemidefinite(ValueError):
    """Raised by :func:`cholesky_psd` when a pivot is below ``-tol``."""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"matrix is not positive semidefinite: pivot {index} = {value:.6g}")


def check_symmetric(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    gap = np.abs(a - a.T)
    if np.any(gap > SYMMETRY_TOL * np.maximum(1.0, np.abs(a))):
        i, j = np.unravel_index(np.argmax(gap), gap.shape)
        raise NotSymmetric(f"matrix is not symmetric: |a[{i},{j}] - a[{j},{i}]| = {gap[i, j]:.3g}")
    return a


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings for one sweep; every pair ``p < q`` appears exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix.

    Returns ``(values, vectors)`` with values descending and eigenvectors in
    the columns of ``vectors``.
    """
    a = check_symmetric(a).copy()
    a = 0.5 * (a + a.T)
    n = a.shape[0]
    v = np.eye(n)
    if n <= 1:
        return np.diag(a).copy(), v
    scale = np.linalg.norm(a)
    rounds = _round_robin(n)
    for _ in range(MAX_SWEEPS):
        if np.linalg.norm(a - np.diag(np.diag(a))) <= OFFDIAG_TOL * scale:
            break
        for p, q in rounds:
            apq = a[p, q]
            live = apq != 0.0
            if not live.any():
                continue
            p, q, apq = p[live], q[live], apq[live]
            # tiny apq: theta overflows to inf and t falls to 0
            with np.errstate(over="ignore", divide="ignore"):
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(n)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = s
            rot[q, p] = -s
            a = rot.T @ a @ rot
            a[p, q] = 0.0
            a[q, p] = 0.0
            v = v @ rot
    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order]


def sym_eigenvalues(a) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, descending."""
    return jacobi_eigh(a)[0]


def max_eigenvalue(a) -> float:
    return float(sym_eigenvalues(a)[0])


def min_eigenvalue(a) -> float:
    return float(sym_eigenvalues(a)[-1])


def singular_values(m) -> np.ndarray:
    """Singular values, descending.

    Eigenvectors ``v`` of the smaller Gram matrix give the values as the
    norms ``|M v|``; this avoids the square-root loss of accuracy that
    taking ``sqrt`` of the Gram eigenvalues has for small values.
    """
    m = np.atleast_2d(np.asarray(m, dtype=float))
    rows, cols = m.shape
    if min(rows, cols) == 0:
        return np.zeros(0)
    side = m.T if rows <= cols else m
    gram = side.T @ side
    _, vecs = jacobi_eigh(0.5 * (gram + gram.T))
    return np.sort(np.linalg.norm(side @ vecs, axis=0))[::-1]


def cholesky_psd(a, tol: float = 1e-9) -> np.ndarray:
    """Lower-triangular ``L`` with ``L @ L.T == a`` for semidefinite ``a``.

    Pivots in ``[-tol, 0]`` (and positive pivots at rounding level) are
    clamped to zero and their column is dropped; a pivot below ``-tol``
    raises :class:`NotPositiveSemidefinite`.
    """
    a = check_symmetric(a)
    n = a.shape[0]
    low = np.zeros((n, n))
    floor = 64 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(np.diag(a)), initial=0.0)))
    for j in range(n):
        pivot = a[j, j] - low[j, :j] @ low[j, :j]
        if pivot < -tol:
            raise NotPositiveSemidefinite(j, float(pivot))
        if pivot <= floor:
            continue
        d = np.sqrt(pivot)
        low[j, j] = d
        low[j + 1:, j] = (a[j + 1:, j] - low[j + 1:, :j] @ low[j, :j]) / d
    return low
