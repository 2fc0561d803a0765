"""Command-line interface.

Exit codes: 0 property holds / scenario passes, 1 property refuted / scenario
fails, 2 usage or input error, 3 internal guard (symbolic blow-up, root finder
failure).  Reports go to stdout as JSON (or text with ``--pretty``);
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import fixtures
from .commutant import (
    analyze,
    commutes_with_commutator,
    prop3_certificates,
    sample_B,
    symbolic_B,
)
from .errors import (
    DimensionMismatch,
    NoConvergence,
    STCommuteError,
    SymbolicBlowup,
    UnknownScenario,
)
from .matrix import commutator, is_nilpotent
from .matrixio import MatrixFormatError, matrix_to_dict, read_matrix
from .mccoy import st_test
from .scenarios import SCENARIOS, run_scenario
from .spectral import (
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
    pencil_charpoly,
    property_l,
    property_l_exact_refutation,
)

log = logging.getLogger("stcommute")

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_matrix(spec: str | None, flag: str):
    """Read a matrix file, or a built-in fixture written as ``@A0``, ``@B0``, ``@A1``..."""
    if spec is None:
        raise UsageError(f"{flag} is required")
    if spec.startswith("@"):
        try:
            return fixtures.NAMED[spec[1:]]
        except KeyError:
            raise UsageError(f"unknown fixture {spec!r}; known: "
                             + ", ".join("@" + k for k in fixtures.NAMED)) from None
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"no such file: {spec}")
    return read_matrix(path)


# -- subcommands: each returns (report dict, exit code) -----------------------


def cmd_commutes(args):
    A, B = load_matrix(args.a, "--a"), load_matrix(args.b, "--b")
    ok = commutes_with_commutator(A, B)
    C = commutator(A, B)
    report = {"command": "commutes", "commutes": ok, "commutator": matrix_to_dict(C)}
    return report, EXIT_OK if ok else EXIT_REFUTED


def cmd_nilpotent(args):
    A = load_matrix(args.a, "--a")
    if args.b is None:
        ok = is_nilpotent(A)
        return {"command": "nilpotent", "nilpotent": ok}, EXIT_OK if ok else EXIT_REFUTED
    B = load_matrix(args.b, "--b")
    C = commutator(A, B)
    report = {"command": "nilpotent", "commutator": matrix_to_dict(C),
              "commutator_nilpotent": is_nilpotent(C),
              "hypothesis": commutes_with_commutator(A, B), "certificates": None}
    if report["hypothesis"]:
        cert = prop3_certificates(A, B)
        report["certificates"] = cert.to_dict()
        ok = cert.passed
    else:
        ok = report["commutator_nilpotent"]
    return report, EXIT_OK if ok else EXIT_REFUTED


def cmd_st_test(args):
    A, B = load_matrix(args.a, "--a"), load_matrix(args.b, "--b")
    res = st_test(A, B, early_exit=not args.no_early_exit, max_len=args.max_len,
                  parallel=args.parallel)
    report = {"command": "st-test", **res.to_dict()}
    if not res.authoritative:
        report["note"] = "word-length bound below n^2-1: exploratory, not a decision"
    return report, EXIT_OK if res.is_st else EXIT_REFUTED


def cmd_property_l(args):
    A, B = load_matrix(args.a, "--a"), load_matrix(args.b, "--b")
    numeric = property_l(A, B, num_samples=args.samples, tol=args.tol, seed=args.seed)
    exact = property_l_exact_refutation(A, B)
    report = {"command": "property-l", "numeric": numeric.to_dict(),
              "exact": exact.to_dict() if exact is not None else None}
    holds = exact.holds if exact is not None else numeric.holds
    report["verdict"] = ("HOLDS" if exact is not None else "HOLDS_NUMERICALLY") if holds \
        else "FAILS"
    return report, EXIT_OK if holds else EXIT_REFUTED


def cmd_sylvester(args):
    A = load_matrix(args.a, "--a")
    return {"command": "sylvester", **analyze(A).to_dict()}, EXIT_OK


def cmd_solve_b(args):
    A = load_matrix(args.a, "--a")
    report = analyze(A)
    sym = symbolic_B(report)
    samples = [sample_B(report, args.seed + k, 10) for k in range(args.trials)]
    out = {
        "command": "solve-b",
        "dim_ker_psi2": report.dim_ker_psi2,
        "symbolic_B": [[e.format() for e in sym.row(i)] for i in range(sym.rows)],
        "samples": [matrix_to_dict(B) for B in samples],
    }
    return out, EXIT_OK


def cmd_char_pencil(args):
    A, B = load_matrix(args.a, "--a"), load_matrix(args.b, "--b")
    pencil = pencil_charpoly(A, B)
    names = ["x", "y"]
    report = {
        "command": "char-pencil",
        "n": pencil.n,
        "polynomial": pencil.format(),
        "coefficients": {f"t^{k}": c.format(names) for k, c in enumerate(pencil.coeffs)},
    }
    return report, EXIT_OK


def cmd_paper(args):
    rep = run_scenario(args.scenario, seed=args.seed, parallel=args.parallel)
    return rep.to_dict(), EXIT_OK if rep.passed else EXIT_REFUTED


COMMANDS = {
    "commutes": (cmd_commutes, "test whether A commutes with AB - BA"),
    "nilpotent": (cmd_nilpotent, "nilpotency of A, or of AB - BA with certificates"),
    "st-test": (cmd_st_test, "simultaneous triangularization by word traces"),
    "property-l": (cmd_property_l, "property L of the pair (A, B)"),
    "sylvester": (cmd_sylvester, "kernels of psi and psi^2 and the index i(A)"),
    "solve-b": (cmd_solve_b, "symbolic and sampled B with A(AB - BA) = (AB - BA)A"),
    "char-pencil": (cmd_char_pencil, "characteristic polynomial of xA + yB"),
    "paper": (cmd_paper, "run a reproduction scenario"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", metavar="FILE", help="matrix JSON file or fixture (@A0, @B0, ...)")
    common.add_argument("--b", metavar="FILE", help="matrix JSON file or fixture")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--trials", type=int, default=1)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--max-len", type=int, default=None)
    common.add_argument("--no-early-exit", action="store_true")
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--parallel", type=int, default=1, metavar="N")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="stcommute",
        description="Exact checks for matrix pairs whose commutator commutes with A.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "paper":
            p.add_argument("scenario", choices=SCENARIOS)
    return parser


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return pad + ", ".join(str(v) for v in obj)
        return "\n".join(_pretty(v, indent) if isinstance(v, (dict, list))
                         else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    handler = COMMANDS[args.command][0]
    try:
        report, code = handler(args)
    except (UsageError, MatrixFormatError, DimensionMismatch, UnknownScenario, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SymbolicBlowup, NoConvergence) as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except STCommuteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.pretty:
        print(_pretty(report))
    else:
        print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
