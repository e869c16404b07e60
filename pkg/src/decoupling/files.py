"""JSON input files.

Model spec::

    {"dims": [2, 1],
     "cross": [{"a": 1, "b": 2, "matrix": [[0.3], [0.4]]}]}

Vectors are numbered from 1 and each pair needs ``a < b``; the matrix is
``dims[a-1] x dims[b-1]``. Pairs left out are uncorrelated.

Expansion (one list per vector, in model order; degree-0 entries are
rejected because every function must have mean zero)::

    {"vectors": [[{"index": [1, 0], "coeff": 0.5}, {"index": [0, 2], "coeff": -1.0}],
                 [{"index": [3], "coeff": 2.0}]]}

Correlation matrix of a single vector with dependent components::

    {"correlation": [[1.0, 0.3], [0.3, 1.0]]}
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .chaos import ChaosExpansion
from .errors import InvalidModel, ParseError
from .gaussmodel import BlockGaussianSpec


def _load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}") from None


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer, got {value!r}", where)
    return value


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected a number, got {value!r}", where)
    return float(value)


def _matrix(value, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value or not all(isinstance(r, list) for r in value):
        raise ParseError("expected a nonempty list of rows", where)
    width = len(value[0])
    rows = []
    for i, row in enumerate(value):
        if len(row) != width:
            raise ParseError(f"row {i} has {len(row)} entries, expected {width}", f"{where}[{i}]")
        rows.append([_number(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return np.array(rows)


def _object(doc, path) -> dict:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", str(path))
    return doc


def parse_spec(doc, source: str = "<spec>") -> BlockGaussianSpec:
    doc = _object(doc, source)
    if "dims" not in doc:
        raise ParseError("missing field", f"{source}: dims")
    dims = doc["dims"]
    if not isinstance(dims, list) or not dims:
        raise ParseError("expected a nonempty integer array", f"{source}: dims")
    dims = [_int(d, f"{source}: dims[{i}]") for i, d in enumerate(dims)]
    for i, d in enumerate(dims):
        if d < 1:
            raise ParseError(f"dimension must be positive, got {d}", f"{source}: dims[{i}]")
    cross_doc = doc.get("cross", [])
    if not isinstance(cross_doc, list):
        raise ParseError("expected an array", f"{source}: cross")
    cross = {}
    for i, entry in enumerate(cross_doc):
        where = f"{source}: cross[{i}]"
        if not isinstance(entry, dict):
            raise ParseError("expected an object with a, b, matrix", where)
        for key in ("a", "b", "matrix"):
            if key not in entry:
                raise ParseError("missing field", f"{where}.{key}")
        a, b = _int(entry["a"], f"{where}.a"), _int(entry["b"], f"{where}.b")
        if not 1 <= a < b <= len(dims):
            raise ParseError(f"need 1 <= a < b <= {len(dims)}, got a={a}, b={b}", where)
        if (a - 1, b - 1) in cross:
            raise ParseError(f"pair ({a}, {b}) given twice", where)
        mat = _matrix(entry["matrix"], f"{where}.matrix")
        if mat.shape != (dims[a - 1], dims[b - 1]):
            raise ParseError(f"shape {mat.shape} does not match dims ({dims[a - 1]}, {dims[b - 1]})",
                             f"{where}.matrix")
        cross[(a - 1, b - 1)] = mat
    return BlockGaussianSpec(tuple(dims), cross)


def parse_expansion(doc, source: str = "<expansion>") -> ChaosExpansion:
    doc = _object(doc, source)
    vectors = doc.get("vectors")
    if not isinstance(vectors, list):
        raise ParseError("expected an array with one entry list per vector", f"{source}: vectors")
    terms = []
    for a, entries in enumerate(vectors):
        if not isinstance(entries, list):
            raise ParseError("expected an array of {index, coeff}", f"{source}: vectors[{a}]")
        out = {}
        for j, entry in enumerate(entries):
            where = f"{source}: vectors[{a}][{j}]"
            if not isinstance(entry, dict) or "index" not in entry or "coeff" not in entry:
                raise ParseError("expected an object with index and coeff", where)
            idx = entry["index"]
            if not isinstance(idx, list) or not idx:
                raise ParseError("expected a nonempty integer array", f"{where}.index")
            idx = tuple(_int(e, f"{where}.index[{i}]") for i, e in enumerate(idx))
            if any(e < 0 for e in idx):
                raise ParseError("entries must be nonnegative", f"{where}.index")
            if sum(idx) == 0:
                raise ParseError("degree-0 term not allowed: each function must have mean zero",
                                 f"{where}.index")
            if idx in out:
                raise ParseError(f"index {list(idx)} listed twice", f"{where}.index")
            out[idx] = _number(entry["coeff"], f"{where}.coeff")
        terms.append(out)
    return ChaosExpansion(tuple(terms))


def parse_correlation(doc, source: str = "<correlation>") -> np.ndarray:
    doc = _object(doc, source)
    if "correlation" not in doc:
        raise ParseError("missing field", f"{source}: correlation")
    mat = _matrix(doc["correlation"], f"{source}: correlation")
    if mat.shape[0] != mat.shape[1]:
        raise ParseError(f"expected a square matrix, got shape {mat.shape}", f"{source}: correlation")
    return mat


def load_spec(path) -> BlockGaussianSpec:
    return parse_spec(_load_json(path), str(path))


def load_expansion(path, spec: BlockGaussianSpec | None = None) -> ChaosExpansion:
    phi = parse_expansion(_load_json(path), str(path))
    if spec is not None:
        try:
            phi.check(spec)
        except InvalidModel as exc:
            raise ParseError(str(exc), str(path)) from None
    return phi


def load_correlation(path) -> np.ndarray:
    return parse_correlation(_load_json(path), str(path))
