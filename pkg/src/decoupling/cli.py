"""Command-line interface.

Exit codes: 0 success, 1 inequality violated, 2 parse error, 3 invalid model.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import report
from .bounds import theorem1_constants
from .errors import InvalidModel, ParseError
from .files import load_correlation, load_expansion, load_spec
from .gaussmodel import validate

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3
COMMANDS = ("constants", "validate", "verify", "sharpness", "report")


@dataclass
class RunConfig:
    command: str
    spec_path: str | None
    expansion_path: str | None = None
    correlation_path: str | None = None
    degree_max: int = 4
    samples: int = 100_000
    trials: int = 200
    seed: int = 0
    tol: float = 1e-9
    format: str = "text"

    def __post_init__(self):
        if self.degree_max < 1:
            raise ValueError("--degree-max must be >= 1")
        if self.samples < 0:
            raise ValueError("--samples must be >= 0")
        if self.trials < 1:
            raise ValueError("--trials must be >= 1")


def _fmt(x) -> str:
    if isinstance(x, float):
        return "%.6g" % x
    return str(x)


def _status(ok: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if os.environ.get("NO_COLOR") is None and sys.stdout.isatty():
        return f"\033[{32 if ok else 31}m{word}\033[0m"
    return word


def _text_constants(sec: dict) -> list[str]:
    t3 = sec["theorem3"]
    lines = [f"vectors: {sec['n_vectors']}  dims: {sec['dims']}"]
    for p in t3.get("pair_singulars", []):
        lines.append(f"  s*[{p['a']},{p['b']}] = {_fmt(p['s'])}")
    lines.append("S* =")
    lines.extend("  " + "  ".join(_fmt(x) for x in row) for row in t3["sstar"])
    lines.append(f"sigma0 = {_fmt(t3['sigma0'])}")
    lines.append(f"C- = {_fmt(t3['lower'])}  (informative: {_fmt(t3['informative_lower'])})")
    lines.append(f"C+ = {_fmt(t3['upper'])}")
    if "theorem2" in sec:
        t2 = sec["theorem2"]
        lines.append(f"two-vector constants: c- = {_fmt(t2['lower'])}  c+ = {_fmt(t2['upper'])}")
    return lines


def _text_validation(sec: dict) -> list[str]:
    lines = [f"valid: {sec['valid']}",
             f"min eigenvalue: {_fmt(sec['min_eigenvalue'])}",
             f"symmetry residual: {_fmt(sec['symmetry_residual'])}",
             f"max |correlation|: {_fmt(sec['max_abs_entry'])}"]
    lines.extend(f"problem: {p}" for p in sec["problems"])
    return lines


def _text_sharpness(sec: dict) -> list[str]:
    lines = [f"C- = {_fmt(sec['C_minus'])}  C+ = {_fmt(sec['C_plus'])}", "degree  lambda_min  lambda_max"]
    for r in sec["rows"]:
        if "skipped" in r:
            lines.append(f"{r['degree']:>6}  skipped: {r['skipped']}")
        else:
            lines.append(f"{r['degree']:>6}  {_fmt(r['lambda_min']):>10}  {_fmt(r['lambda_max']):>10}")
    if sec["gap_upper"] is not None:
        lines.append(f"C+ - max lambda_max = {_fmt(sec['gap_upper'])}")
    for key, label in (("theorem2_sharp_at_degree1", "degree-1 extremes equal 1 -+ s*"),
                       ("theorem1_sharp_at_degree1", "degree-1 extremes equal correlation eigenvalues")):
        if key in sec:
            lines.append(f"{label}: {_status(sec[key])}")
    return lines


def _text_verify(sec: dict) -> list[str]:
    return [f"C- = {_fmt(sec['C_minus'])}  C+ = {_fmt(sec['C_plus'])}",
            f"trials: {sec['trials']}  violations: {sec['violations']}  "
            f"worst margin: {_fmt(sec['worst_margin'])}",
            f"ratio range: [{_fmt(min(sec['ratios']))}, {_fmt(max(sec['ratios']))}]",
            f"sandwich: {_status(sec['violations'] == 0)}"]


def _text_monte_carlo(sec: dict) -> list[str]:
    lines = [f"samples: {sec['samples']}  seed: {sec['seed']}"]
    for a, (est, se, ex) in enumerate(zip(sec["norms"], sec["norms_se"], sec["exact_norms"]), 1):
        lines.append(f"  ||phi_{a}||^2: mc {_fmt(est)} +- {_fmt(se)}  exact {_fmt(ex)}")
    lines.append(f"  ||sum||^2: mc {_fmt(sec['sum_norm'])} +- {_fmt(sec['sum_norm_se'])}  "
                 f"exact {_fmt(sec['exact_sum_norm'])}")
    lines.append(f"agreement within 5 se: {_status(sec['agree'])}")
    return lines


_TEXT = {
    "constants": _text_constants,
    "validation": _text_validation,
    "sharpness": _text_sharpness,
    "verify": _text_verify,
    "monte_carlo": _text_monte_carlo,
}


def emit(doc: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(report.to_json(doc) + "\n")
        return
    lines = []
    for name, sec in doc.items():
        if name in _TEXT:
            lines.append(f"== {name} ==")
            lines.extend(_TEXT[name](sec))
        elif name == "theorem1":
            lines.append("== theorem1 ==")
            lines.append(f"c- = {_fmt(sec['lower'])}  c+ = {_fmt(sec['upper'])}")
    out.write("\n".join(lines) + "\n")


def run(cfg: RunConfig) -> tuple[dict, int]:
    """Execute one command; returns the output document and exit code."""
    if cfg.command == "constants" and cfg.correlation_path:
        corr = load_correlation(cfg.correlation_path)
        return {"theorem1": theorem1_constants(corr).to_dict()}, EXIT_OK

    if cfg.spec_path is None:
        raise ParseError("--spec is required", cfg.command)
    spec = load_spec(cfg.spec_path)
    diag = validate(spec)
    if cfg.command == "validate":
        return {"validation": diag.to_dict()}, EXIT_OK if diag.valid else EXIT_INVALID
    if not diag.valid:
        return {"validation": diag.to_dict()}, EXIT_INVALID

    phi = load_expansion(cfg.expansion_path, spec) if cfg.expansion_path else None
    if cfg.command == "constants":
        return {"constants": report.constants_section(spec)}, EXIT_OK
    if cfg.command == "sharpness":
        return {"sharpness": report.sharpness_section(spec, cfg.degree_max, cfg.tol)}, EXIT_OK
    verify = report.verify_section(spec, phi, cfg.trials, cfg.degree_max, cfg.seed, cfg.tol)
    code = EXIT_VIOLATION if verify["violations"] else EXIT_OK
    if cfg.command == "verify":
        return {"verify": verify}, code
    doc = {
        "constants": report.constants_section(spec),
        "validation": diag.to_dict(),
        "sharpness": report.sharpness_section(spec, cfg.degree_max, cfg.tol),
        "verify": verify,
        "monte_carlo": report.monte_carlo_section(spec, phi, cfg.samples, cfg.degree_max, cfg.seed),
    }
    return doc, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", dest="spec_path", help="model spec file (JSON)")
    common.add_argument("--expansion", dest="expansion_path", help="chaos expansion file (JSON)")
    common.add_argument("--degree-max", type=int, default=4)
    common.add_argument("--samples", type=int, default=100_000)
    common.add_argument("--trials", type=int, default=200)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="decoupling",
                                     description="Decoupling constants for block-correlated Gaussian vectors.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "constants": "pairwise s*, S*, sigma0 and C-/C+ (or single-vector constants with --correlation)",
        "validate": "check that the spec defines a Gaussian law",
        "verify": "check the sandwich inequality on an expansion or on random expansions",
        "sharpness": "per-degree exact extreme constants against C-/C+",
        "report": "all of the above plus a Monte Carlo cross-check",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "constants":
            p.add_argument("--correlation", dest="correlation_path",
                           help="correlation matrix file for one vector with dependent components")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(command=args.command, spec_path=args.spec_path,
                        expansion_path=args.expansion_path,
                        correlation_path=getattr(args, "correlation_path", None),
                        degree_max=args.degree_max, samples=args.samples, trials=args.trials,
                        seed=args.seed, tol=args.tol, format=args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        doc, code = run(cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidModel as exc:
        print(f"invalid model: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if code == EXIT_INVALID:
        print("invalid model: " + "; ".join(doc["validation"]["problems"]), file=sys.stderr)
    emit(doc, cfg.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
