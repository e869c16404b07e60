"""Multi-indices: tuples of nonnegative integers indexing Wick monomials.

Indices are plain tuples. Enumeration order within a fixed total degree is
lexicographic descending, e.g. ``(3, 0), (2, 1), (1, 2), (0, 3)``.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

MultiIndex = tuple[int, ...]

DEFAULT_MAX_DEGREE = 8


def as_index(entries: Sequence[int]) -> MultiIndex:
    """Coerce ``entries`` to a validated multi-index."""
    out = []
    for e in entries:
        if isinstance(e, bool) or int(e) != e or e < 0:
            raise ValueError(f"multi-index entries must be nonnegative integers, got {entries!r}")
        out.append(int(e))
    return tuple(out)


def degree(k: Sequence[int]) -> int:
    return sum(k)


def factorial(k: Sequence[int]) -> int:
    """Product of entry factorials (exact integer)."""
    out = 1
    for e in k:
        out *= math.factorial(e)
    return out


def power(a: Sequence[float], k: Sequence[int]) -> float:
    """Componentwise power product ``a_1**k_1 * ... * a_d**k_d`` with ``0**0 == 1``."""
    if len(a) != len(k):
        raise ValueError(f"length mismatch: {len(a)} values vs {len(k)} exponents")
    out = 1.0
    for x, e in zip(a, k):
        if e:
            out *= float(x) ** e
    return out


def padded_equal(ka: Sequence[int], kb: Sequence[int]) -> bool:
    """Equality after zero-padding the shorter index to the longer's length."""
    if len(ka) < len(kb):
        ka, kb = kb, ka
    m = len(kb)
    return tuple(ka[:m]) == tuple(kb) and not any(ka[m:])


@lru_cache(maxsize=None)
def _enumerate(d: int, n: int) -> tuple[MultiIndex, ...]:
    if d == 1:
        return ((n,),)
    return tuple((first,) + rest for first in range(n, -1, -1) for rest in _enumerate(d - 1, n - first))


def enumerate_degree(d: int, n: int) -> list[MultiIndex]:
    """All ``d``-dimensional indices of total degree ``n``, lexicographic descending.

    There are ``comb(n + d - 1, d - 1)`` of them.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    return list(_enumerate(d, n))
