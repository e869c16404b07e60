"""Block-correlated standard Gaussian vectors.

``N`` vectors of dimensions ``d_1..d_N``. Components within a vector are
independent standard normals; vector ``a`` and vector ``b`` have
cross-correlation block ``R[a, b]`` (``d_a x d_b``). Vectors are indexed
from 0 here; the file format uses 1-based indices.

Random numbers come from numpy's PCG64 bit generator. Sampling draws in
fixed chunks of ``CHUNK_ROWS`` rows; chunk ``i`` uses its own generator
seeded from ``SeedSequence(seed, spawn_key=(i,))``, so output depends only
on ``(spec, count, seed)`` and chunks can be produced in any order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidModel
from .linalg import NotPositiveSemidefinite, cholesky_psd, singular_values, sym_eigenvalues

PSD_TOL = 1e-9
CHUNK_ROWS = 4096


@dataclass(frozen=True)
class BlockGaussianSpec:
    dims: tuple[int, ...]
    cross: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise InvalidModel("at least one vector is required")
        if any(d < 1 for d in dims):
            raise InvalidModel(f"dimensions must be positive, got {dims}")
        cross = {}
        for (a, b), block in self.cross.items():
            if a == b or not (0 <= a < len(dims) and 0 <= b < len(dims)):
                raise InvalidModel(f"bad cross block index ({a}, {b}) for {len(dims)} vectors")
            block = np.atleast_2d(np.asarray(block, dtype=float))
            if a > b:
                a, b, block = b, a, block.T
            if block.shape != (dims[a], dims[b]):
                raise InvalidModel(
                    f"cross block ({a}, {b}) has shape {block.shape}, expected {(dims[a], dims[b])}")
            if (a, b) in cross:
                raise InvalidModel(f"cross block ({a}, {b}) given twice")
            block.setflags(write=False)
            cross[(a, b)] = block
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "cross", cross)

    @property
    def n_vectors(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def block(self, a: int, b: int) -> np.ndarray:
        """Cross-correlation between vectors ``a`` and ``b`` (zeros if absent)."""
        if a == b:
            return np.eye(self.dims[a])
        if a < b:
            m = self.cross.get((a, b))
            return np.zeros((self.dims[a], self.dims[b])) if m is None else m
        return self.block(b, a).T

    def scaled(self, t: float) -> "BlockGaussianSpec":
        return BlockGaussianSpec(self.dims, {k: t * v for k, v in self.cross.items()})


@dataclass(frozen=True)
class JointCovariance:
    matrix: np.ndarray
    offsets: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    def slice(self, a: int) -> slice:
        return slice(self.offsets[a], self.offsets[a + 1])


def assemble(spec: BlockGaussianSpec) -> JointCovariance:
    """Joint correlation matrix: identity diagonal blocks, given cross blocks."""
    offsets = tuple(int(x) for x in np.concatenate([[0], np.cumsum(spec.dims)]))
    mat = np.eye(offsets[-1])
    for (a, b), block in spec.cross.items():
        mat[offsets[a]:offsets[a + 1], offsets[b]:offsets[b + 1]] = block
        mat[offsets[b]:offsets[b + 1], offsets[a]:offsets[a + 1]] = block.T
    return JointCovariance(mat, offsets)


@dataclass
class Diagnostics:
    valid: bool
    symmetry_residual: float
    min_eigenvalue: float
    max_abs_entry: float
    pair_max_singular: dict[tuple[int, int], float]
    problems: list[str]

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "symmetry_residual": self.symmetry_residual,
            "min_eigenvalue": self.min_eigenvalue,
            "max_abs_entry": self.max_abs_entry,
            "pair_max_singular": [
                {"a": a + 1, "b": b + 1, "s": s} for (a, b), s in sorted(self.pair_max_singular.items())
            ],
            "problems": list(self.problems),
        }


def validate(spec: BlockGaussianSpec) -> Diagnostics:
    """Check that ``spec`` defines a Gaussian law. Never raises."""
    joint = assemble(spec).matrix
    problems = []
    sym = float(np.max(np.abs(joint - joint.T)))
    min_eig = float(sym_eigenvalues(0.5 * (joint + joint.T))[-1])
    off = joint - np.eye(joint.shape[0])
    max_abs = float(np.max(np.abs(off))) if off.size else 0.0
    pairs = {}
    for a in range(spec.n_vectors):
        for b in range(a + 1, spec.n_vectors):
            pairs[(a, b)] = float(singular_values(spec.block(a, b))[0])
    if max_abs > 1.0:
        problems.append(f"correlation entry of magnitude {max_abs:.6g} exceeds 1")
    if min_eig < -PSD_TOL:
        problems.append(f"joint correlation matrix is not positive semidefinite: "
                        f"minimum eigenvalue {min_eig:.6g}")
    return Diagnostics(not problems, sym, min_eig, max_abs, pairs, problems)


def require_valid(spec: BlockGaussianSpec) -> None:
    diag = validate(spec)
    if not diag.valid:
        raise InvalidModel("; ".join(diag.problems))


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def standard_normals(count: int, dim: int, seed: int) -> np.ndarray:
    """``count x dim`` i.i.d. standard normals under the chunked-seed scheme."""
    out = np.empty((count, dim))
    for chunk, start in enumerate(range(0, count, CHUNK_ROWS)):
        stop = min(start + CHUNK_ROWS, count)
        out[start:stop] = _chunk_rng(seed, chunk).standard_normal((stop - start, dim))
    return out


def sample(spec: BlockGaussianSpec, count: int, seed: int) -> np.ndarray:
    """``count`` independent draws of the stacked vectors, one per row."""
    low = cholesky_psd(assemble(spec).matrix, tol=PSD_TOL)
    return standard_normals(count, spec.total_dim, seed) @ low.T


def _is_feasible(spec: BlockGaussianSpec, margin: float) -> bool:
    joint = assemble(spec).matrix - margin * np.eye(spec.total_dim)
    try:
        cholesky_psd(joint, tol=0.0)
    except NotPositiveSemidefinite:
        return False
    return True


def random_spec(dims, seed: int, margin: float = 1e-6, iterations: int = 40) -> BlockGaussianSpec:
    """Random valid spec, pushed close to the semidefinite boundary.

    Cross entries are uniform on [-1, 1]; all blocks are then scaled by the
    largest ``t`` in [0, 1] (bisection) keeping the joint matrix positive
    definite with ``margin``.
    """
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("dims must be nonempty")
    rng = np.random.Generator(np.random.PCG64(seed))
    raw = BlockGaussianSpec(dims, {
        (a, b): rng.uniform(-1.0, 1.0, size=(dims[a], dims[b]))
        for a in range(len(dims)) for b in range(a + 1, len(dims))
    })
    if _is_feasible(raw, margin):
        return raw
    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if _is_feasible(raw.scaled(mid), margin):
            lo = mid
        else:
            hi = mid
    return raw.scaled(lo)
