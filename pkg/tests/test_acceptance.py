"""Exit criteria. Each test records one PASS/FAIL line shown in the run summary."""
import itertools
import json
import math
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from decoupling.bounds import theorem1_constants, theorem3_constants
from decoupling.chaos import degree_rayleigh_extremes, mc_verify, random_expansion, verify_inequality
from decoupling.gaussmodel import assemble, random_spec
from decoupling.hermite import gauss_hermite, tensor_rule, wick_power
from decoupling.linalg import cholesky_psd, singular_values
from decoupling.moments import cross_gram_block, cross_moment_general, diagonal_gram_block, wick_rotation
from decoupling.multiindex import enumerate_degree

from conftest import ACCEPTANCE_LINES, scalar_spec
from oracles import wick_cross_moment

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(number: int, title: str, limit_s: float):
    """Run one criterion body; record PASS/FAIL with its detail and runtime."""
    info = {"detail": ""}
    start = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit_s
        status = "PASS" if ok and within else "FAIL"
        ACCEPTANCE_LINES.append(
            f"[{status}] {number}. {title}: {info['detail']} ({elapsed:.1f}s, limit {limit_s:.0f}s)")
    assert within, f"criterion {number} took {elapsed:.1f}s (limit {limit_s}s)"


def random_dims(rng, n_min, n_max, d_max):
    return tuple(int(d) for d in rng.integers(1, d_max + 1, size=rng.integers(n_min, n_max + 1)))


def test_1_sandwich():
    with criterion(1, "sandwich inequality on 500 random instances", 60) as info:
        rng = np.random.default_rng(1001)
        violations = 0
        for seed in range(500):
            spec = random_spec(random_dims(rng, 1, 4, 3), seed)
            phi = random_expansion(spec, 4, int(rng.integers(1, 8)), seed)
            v = verify_inequality(spec, phi, tol=1e-9)
            violations += not v.passed
        info["detail"] = f"{violations} violations"
        assert violations == 0


def test_2_two_vector_sharpness():
    with criterion(2, "degree-1 extremes equal 1 -+ s* for 100 two-vector specs", 10) as info:
        rng = np.random.default_rng(1002)
        worst = 0.0
        for seed in range(100):
            spec = random_spec(random_dims(rng, 2, 2, 3), seed)
            s = singular_values(spec.block(0, 1))[0]
            lo, hi = degree_rayleigh_extremes(spec, 1)
            worst = max(worst, abs(lo - (1 - s)), abs(hi - (1 + s)))
        info["detail"] = f"max deviation {worst:.2e}"
        assert worst <= 1e-9


def test_3_single_vector_sharpness():
    with criterion(3, "degree-1 extremes equal correlation eigenvalues for 100 matrices", 10) as info:
        rng = np.random.default_rng(1003)
        worst = 0.0
        for seed in range(100):
            d = int(rng.integers(1, 6))
            spec = random_spec((1,) * d, seed)
            c = theorem1_constants(assemble(spec).matrix)
            lo, hi = degree_rayleigh_extremes(spec, 1)
            worst = max(worst, abs(lo - c.lower), abs(hi - c.upper))
        info["detail"] = f"max deviation {worst:.2e}"
        assert worst <= 1e-9


def test_4_containment_and_gap():
    with criterion(4, "per-degree extremes inside [C-, C+] for 100 three-vector specs", 120) as info:
        rng = np.random.default_rng(1004)
        outside = 0
        gapped = 0
        for seed in range(100):
            spec = random_spec(random_dims(rng, 3, 3, 3), seed)
            c = theorem3_constants(spec)
            top = -np.inf
            for n in range(1, 5):
                lo, hi = degree_rayleigh_extremes(spec, n)
                outside += not (c.lower - 1e-9 <= lo and hi <= c.upper + 1e-9)
                top = max(top, hi)
            gapped += top < c.upper - 0.05
        info["detail"] = f"{outside} containment failures, {gapped}/100 with gap > 0.05 below C+"
        assert outside == 0
        assert gapped >= 1


def test_5_moment_identities():
    with criterion(5, "general cross-moments vs quadrature and vs rotated diagonal case", 60) as info:
        rng = np.random.default_rng(1005)
        cases = 0
        worst_q = 0.0
        for p, q in itertools.product((1, 2), repeat=2):
            r = random_spec((p, q), int(rng.integers(1 << 30))).block(0, 1)
            ks = [k for n in range(4) for k in enumerate_degree(p, n)]
            ls = [l for n in range(4) for l in enumerate_degree(q, n)]
            for k in ks:
                for l in ls:
                    worst_q = max(worst_q, abs(cross_moment_general(k, l, r) - wick_cross_moment(k, l, r)))
                    cases += 1
        worst_r = 0.0
        for trial in range(100):
            p, q = (int(x) for x in rng.integers(1, 4, size=2))
            r = random_spec((p, q), trial).block(0, 1)
            u, s, vt = np.linalg.svd(r)
            n = 1 + trial % 4
            rotated = wick_rotation(u.T, n) @ cross_gram_block(r, n) @ wick_rotation(vt, n).T
            worst_r = max(worst_r, float(np.max(np.abs(rotated - diagonal_gram_block(s, p, q, n)))))
        info["detail"] = (f"{cases} quadrature cases, max error {worst_q:.1e}; "
                          f"100 rotated blocks, max error {worst_r:.1e}")
        assert cases >= 50 and worst_q <= 1e-8 and worst_r <= 1e-9


def test_6_mehler():
    with criterion(6, "E[He_k(X) He_k(Y)] = k! rho^k", 5) as info:
        nodes, weights = tensor_rule(gauss_hermite(8), 2)
        worst = 0.0
        for rho in (-0.9, -0.5, 0.0, 0.3, 0.99):
            low = cholesky_psd([[1.0, rho], [rho, 1.0]])
            xy = nodes @ low.T
            for k in range(6):
                exact = math.factorial(k) * rho**k
                quad = float(np.sum(weights * wick_power(k, xy[:, 0]) * wick_power(k, xy[:, 1])))
                formula = cross_moment_general((k,), (k,), [[rho]])
                worst = max(worst, abs(quad - exact), abs(formula - exact))
        info["detail"] = f"max deviation {worst:.1e}"
        assert worst <= 1e-9


def test_7_monte_carlo():
    with criterion(7, "Monte Carlo sum-norm within 5 se of exact, 50 instances at 1e5 samples", 120) as info:
        rng = np.random.default_rng(1007)
        agree = 0
        for seed in range(50):
            spec = random_spec(random_dims(rng, 1, 4, 3), seed)
            phi = random_expansion(spec, 4, int(rng.integers(1, 6)), seed)
            est = mc_verify(spec, phi, 100_000, seed)
            agree += abs(est.sum_norm - est.exact_sum_norm) <= 5 * est.sum_norm_se
        info["detail"] = f"{agree}/50 agree"
        assert agree >= 49


def test_8_negative_lower_constant():
    with criterion(8, "three scalar vectors at rho = 0.6 give C- = -0.2, C+ = 2.2", 1) as info:
        c = theorem3_constants(scalar_spec(3, 0.6))
        info["detail"] = f"sigma0 = {c.sigma0:.15g}, C- = {c.lower:.15g}, C+ = {c.upper:.15g}"
        assert abs(c.sigma0 - 1.2) <= 1e-12
        assert abs(c.lower + 0.2) <= 1e-12 and abs(c.upper - 2.2) <= 1e-12


def test_9_report_determinism(tmp_path):
    with criterion(9, "report --seed 0 twice gives byte-identical json", 30) as info:
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps({"dims": [2, 1, 2], "cross": [
            {"a": 1, "b": 2, "matrix": [[0.35], [-0.2]]},
            {"a": 1, "b": 3, "matrix": [[0.1, 0.25], [0.0, -0.3]]},
            {"a": 2, "b": 3, "matrix": [[0.4, 0.05]]}]}))
        argv = [sys.executable, "-m", "decoupling", "report", "--spec", str(spec_path), "--seed", "0",
                "--format", "json"]
        runs = [subprocess.run(argv, capture_output=True, check=False) for _ in range(2)]
        codes = [r.returncode for r in runs]
        same = runs[0].stdout == runs[1].stdout
        info["detail"] = f"exit codes {codes}, identical={same}, {len(runs[0].stdout)} bytes"
        assert codes == [0, 0] and same and runs[0].stdout
