"""Report sections shared by the CLI commands, and their serialization.

Every section is a plain dict of JSON-compatible values. JSON output writes
floats with 17 significant digits so values survive a round trip exactly.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .bounds import theorem2_constants, theorem3_constants
from .chaos import (BasisTooLarge, ChaosExpansion, degree_rayleigh_extremes, mc_verify,
                    random_expansion, verify_inequality)
from .gaussmodel import BlockGaussianSpec, assemble, validate
from .linalg import sym_eigenvalues

DEFAULT_TERMS = 5


def constants_section(spec: BlockGaussianSpec) -> dict:
    c3 = theorem3_constants(spec)
    out = {"n_vectors": spec.n_vectors, "dims": list(spec.dims), "theorem3": c3.to_dict()}
    if spec.n_vectors == 2:
        out["theorem2"] = theorem2_constants(spec.block(0, 1)).to_dict()
    return out


def validation_section(spec: BlockGaussianSpec) -> dict:
    return validate(spec).to_dict()


def sharpness_section(spec: BlockGaussianSpec, degree_max: int, tol: float = 1e-9) -> dict:
    c3 = theorem3_constants(spec)
    rows = []
    for n in range(1, degree_max + 1):
        try:
            lo, hi = degree_rayleigh_extremes(spec, n)
        except BasisTooLarge as exc:
            rows.append({"degree": n, "skipped": str(exc)})
            continue
        rows.append({"degree": n, "lambda_min": lo, "lambda_max": hi})
    done = [r for r in rows if "lambda_max" in r]
    out = {
        "C_minus": c3.lower,
        "C_plus": c3.upper,
        "rows": rows,
        "max_lambda_max": max((r["lambda_max"] for r in done), default=None),
        "min_lambda_min": min((r["lambda_min"] for r in done), default=None),
    }
    out["gap_upper"] = None if out["max_lambda_max"] is None else c3.upper - out["max_lambda_max"]
    first = done[0] if done and done[0]["degree"] == 1 else None
    if spec.n_vectors == 2 and first is not None:
        s = c3.pair_singulars[(0, 1)]
        out["theorem2_sharp_at_degree1"] = (abs(first["lambda_min"] - (1 - s)) <= tol
                                            and abs(first["lambda_max"] - (1 + s)) <= tol)
    if all(d == 1 for d in spec.dims) and first is not None:
        lam = sym_eigenvalues(assemble(spec).matrix)
        out["theorem1_sharp_at_degree1"] = (abs(first["lambda_min"] - lam[-1]) <= tol
                                            and abs(first["lambda_max"] - lam[0]) <= tol)
    return out


def verify_section(spec: BlockGaussianSpec, phi: ChaosExpansion | None, trials: int,
                   degree_max: int, seed: int, tol: float) -> dict:
    c3 = theorem3_constants(spec)
    if phi is not None:
        cases = [phi]
    else:
        cases = [random_expansion(spec, degree_max, DEFAULT_TERMS, seed + i) for i in range(trials)]
    verdicts = [verify_inequality(spec, p, tol, constants=c3) for p in cases]
    return {
        "C_minus": c3.lower,
        "C_plus": c3.upper,
        "trials": len(verdicts),
        "violations": sum(not v.passed for v in verdicts),
        "worst_margin": min(v.margin for v in verdicts),
        "ratios": [v.ratio for v in verdicts],
        "results": [v.to_dict() for v in verdicts] if phi is not None else None,
    }


def monte_carlo_section(spec: BlockGaussianSpec, phi: ChaosExpansion | None, samples: int,
                        degree_max: int, seed: int) -> dict:
    if phi is None:
        phi = random_expansion(spec, degree_max, DEFAULT_TERMS, seed)
    est = mc_verify(spec, phi, samples, seed)
    out = est.to_dict()
    out["expansion"] = phi.to_dict()
    return out


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return json.dumps(None)
    return "%.17g" % x


def to_json(obj, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, np.ndarray):
        return to_json(obj.tolist(), indent, _level)
    if obj is None:
        return "null"
    return json.dumps(str(obj))
