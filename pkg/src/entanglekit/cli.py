"""Command-line front-end.

Subcommands: classify | schmidt | ptrace | marginal | verify.  Input is a
JSON state file (``-`` reads stdin); output is a report, either human
readable (default) or canonical JSON (``--json``).  Exit codes:

    0  success
    1  verification failure
    2  parse or schema error
    3  state invariant violation (bad normalization, dims mismatch, ...)
    4  zero vector where a nonzero one is required
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from typing import Optional

import numpy as np

from . import __version__
from .bipartite import BipartiteDims, BipartiteVector, partial_trace, schmidt
from .classical import ClassicalState, CompositeClassicalState, classify_classical, marginal
from .errors import SchemaError, ZeroVectorError
from .linalg import DEFAULT_EPS, Tolerance
from .quantum import DensityOperator, PureState, projector
from .separability import SeparableDecomposition, Verdict, classify, separable_density
from .statefile import (
    classical_cert_to_json,
    classification_to_json,
    dumps_canonical,
    loads_state,
    schmidt_to_json,
    state_to_json,
)
from .verify import DEFAULT_INSTANCES, DEFAULT_SEED, run_all

TOL_ENV_VAR = "ENTANGLEKIT_TOL"

_SIDE_NAMES = {1: "first", 2: "second"}


def _resolve_tolerance(value: Optional[float]) -> Tolerance:
    if value is not None:
        return Tolerance(value)
    env = os.environ.get(TOL_ENV_VAR)
    if env is not None:
        try:
            return Tolerance(float(env))
        except ValueError as exc:
            raise ValueError(f"invalid {TOL_ENV_VAR} value {env!r}: {exc}") from exc
    return Tolerance(DEFAULT_EPS)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _dims_from_args(args) -> Optional[BipartiteDims]:
    if args.dims is None:
        return None
    return BipartiteDims(args.dims[0], args.dims[1])


def _as_bipartite(state, dims: Optional[BipartiteDims]) -> BipartiteVector:
    """View a pure-vector input as a bipartite vector, attaching dims."""
    if isinstance(state, BipartiteVector):
        if dims is not None and dims != state.dims:
            raise ValueError(f"--dims {dims} disagree with the file's dims {state.dims}")
        return state
    if isinstance(state, PureState):
        if dims is None:
            raise ValueError("--dims D1 D2 is required for a 'pure' input")
        return BipartiteVector(state.vec, dims)
    raise ValueError(f"expected a bipartite or pure state, got {type(state).__name__}")


def _cmd_classify(state, args, tol: Tolerance) -> dict:
    dims = _dims_from_args(args)
    if isinstance(state, ClassicalState):
        raise ValueError(
            "a single-system classical state has no composite structure to classify; "
            "provide a 'classical2' file"
        )
    if isinstance(state, CompositeClassicalState):
        cert = classify_classical(state)
        verdict = Verdict.CLASSICAL_PURE if state.is_pure else Verdict.CLASSICAL_SEPARABLE
        return {"verdict": verdict.value, "certificate": classical_cert_to_json(cert)}
    if isinstance(state, (PureState, BipartiteVector)):
        state = _as_bipartite(state, dims)
        return classification_to_json(classify(state, tol=tol))
    if isinstance(state, (DensityOperator, SeparableDecomposition)):
        return classification_to_json(classify(state, dims=dims, tol=tol))
    raise ValueError(f"cannot classify a {type(state).__name__}")


def _cmd_schmidt(state, args, tol: Tolerance) -> dict:
    t = _as_bipartite(state, _dims_from_args(args))
    if t.norm == 0.0:
        raise ZeroVectorError("cannot Schmidt-decompose the zero vector")
    if abs(t.norm - 1.0) > tol.eps:
        raise ValueError(f"state must have unit norm, got {t.norm!r}")
    return schmidt_to_json(schmidt(t, tol))


def _cmd_ptrace(state, args, tol: Tolerance) -> dict:
    dims = _dims_from_args(args)
    if isinstance(state, (PureState, BipartiteVector)):
        t = _as_bipartite(state, dims)
        if abs(t.norm - 1.0) > tol.eps:
            raise ValueError(f"state must have unit norm, got {t.norm!r}")
        rho = projector(PureState(t.vec, tol))
        dims = t.dims
    elif isinstance(state, DensityOperator):
        if dims is None:
            raise ValueError("--dims D1 D2 is required for a 'density' input")
        rho = state
    elif isinstance(state, SeparableDecomposition):
        if dims is not None and dims != state.dims:
            raise ValueError(f"--dims {dims} disagree with the file's dims {state.dims}")
        rho = separable_density(state, tol)
        dims = state.dims
    else:
        raise ValueError(
            f"partial trace needs a quantum state, got {type(state).__name__}; "
            "classical files go through 'marginal'"
        )
    reduced = partial_trace(rho, dims, _SIDE_NAMES[args.keep], tol)
    return state_to_json(reduced)


def _cmd_marginal(state, args, tol: Tolerance) -> dict:
    if not isinstance(state, CompositeClassicalState):
        raise ValueError(
            f"marginal needs a 'classical2' file, got {type(state).__name__}; "
            "quantum files go through 'ptrace'"
        )
    return state_to_json(marginal(state, _SIDE_NAMES[args.side]))


def _render_pretty(command: str, result: dict, out) -> None:
    if command == "classify":
        print(f"verdict: {result['verdict']}", file=out)
        cert = result["certificate"]
        kind = cert.get("kind", "")
        if kind == "schmidt":
            coeffs = cert["schmidt"]["coeffs"]
            print(f"schmidt rank: {cert['schmidt']['rank']}", file=out)
            print(f"schmidt coefficients: {[round(c, 12) for c in coeffs]}", file=out)
        elif kind == "product-factors":
            print("recovered product factors (as [re, im] pairs):", file=out)
            print(f"  x: {cert['x']}", file=out)
            print(f"  y: {cert['y']}", file=out)
        elif kind == "decomposition":
            terms = cert["decomposition"]["terms"]
            print(f"decomposition terms: {len(terms)}", file=out)
            print(f"range criterion passed: {cert['range_criterion_passed']}", file=out)
        elif kind == "range-report":
            print(f"range rank: {cert['range_rank']}", file=out)
            print(f"range basis all elementary: {cert['all_elementary']}", file=out)
        elif kind == "classical-decomposition":
            print(f"certificate terms: {len(cert['terms'])}", file=out)
    elif command == "schmidt":
        print(f"rank: {result['rank']}", file=out)
        print(f"coefficients: {[round(c, 12) for c in result['coeffs']]}", file=out)
    elif command in ("ptrace", "marginal"):
        print(dumps_canonical(result, pretty=True), file=out)
    elif command == "verify":
        for suite in result["suites"]:
            status = "PASS" if suite["passed"] else "FAIL"
            print(
                f"{status}  {suite['name']} ({suite['instances']} instances): "
                f"{suite['description']}",
                file=out,
            )
            if not suite["passed"] and "counterexample" in suite:
                print(f"  counterexample: {dumps_canonical(suite['counterexample'])}", file=out)
        tally = "all suites passed" if result["all_passed"] else "FAILURES detected"
        print(f"{tally} (seed {result['seed']})", file=out)


def main(argv: Optional[list[str]] = None) -> int:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        metavar="EPS",
        help=f"relative tolerance (default {DEFAULT_EPS}; {TOL_ENV_VAR} overrides)",
    )
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for 'verify'")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit the canonical JSON report")
    fmt.add_argument("--pretty", action="store_true", help="human-readable output (default)")

    parser = argparse.ArgumentParser(
        prog="entanglekit",
        description="Classify, decompose, and reduce classical and quantum composite states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="entanglement/separability verdict")
    p.add_argument("path", help="state file, or - for stdin")
    p.add_argument("--dims", type=int, nargs=2, metavar=("D1", "D2"), default=None)

    p = sub.add_parser("schmidt", parents=[common], help="Schmidt coefficients and factors")
    p.add_argument("path", help="bipartite state file, or - for stdin")
    p.add_argument("--dims", type=int, nargs=2, metavar=("D1", "D2"), default=None)

    p = sub.add_parser("ptrace", parents=[common], help="partial trace of a bipartite state")
    p.add_argument("path", help="bipartite/pure/density file, or - for stdin")
    p.add_argument("--keep", type=int, choices=(1, 2), required=True)
    p.add_argument("--dims", type=int, nargs=2, metavar=("D1", "D2"), default=None)

    p = sub.add_parser("marginal", parents=[common], help="marginal of a composite classical state")
    p.add_argument("path", help="classical2 file, or - for stdin")
    p.add_argument("--side", type=int, choices=(1, 2), required=True)

    p = sub.add_parser("verify", parents=[common], help="run the built-in verification suites")
    p.add_argument(
        "--instances", type=int, default=DEFAULT_INSTANCES, help="instances per suite"
    )

    args = parser.parse_args(argv)
    out = sys.stdout
    started = time.perf_counter()

    try:
        tol = _resolve_tolerance(args.tol)
        report = {"tool": "entanglekit", "version": __version__, "command": args.command}

        if args.command == "verify":
            results = run_all(seed=args.seed, instances=args.instances, tol=tol)
            report["tolerance"] = tol.eps
            report["result"] = {
                "seed": args.seed,
                "suites": [
                    {
                        "name": r.name,
                        "description": r.description,
                        "passed": r.passed,
                        "instances": r.instances,
                        **({"counterexample": r.counterexample} if r.counterexample else {}),
                    }
                    for r in results
                ],
                "all_passed": all(r.passed for r in results),
            }
            exit_code = 0 if report["result"]["all_passed"] else 1
        else:
            raw = _read_input(args.path)
            state = loads_state(raw.decode("utf-8"), tol)
            handler = {
                "classify": _cmd_classify,
                "schmidt": _cmd_schmidt,
                "ptrace": _cmd_ptrace,
                "marginal": _cmd_marginal,
            }[args.command]
            report["input_digest"] = "sha256:" + hashlib.sha256(raw).hexdigest()
            report["tolerance"] = tol.eps
            report["result"] = handler(state, args, tol)
            exit_code = 0
    except SchemaError as exc:
        print(f"entanglekit: schema error: {exc}", file=sys.stderr)
        return 2
    except ZeroVectorError as exc:
        print(f"entanglekit: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"entanglekit: {exc}", file=sys.stderr)
        return 3

    report["elapsed_s"] = time.perf_counter() - started
    if args.json:
        print(dumps_canonical(report), file=out)
    else:
        _render_pretty(args.command, report["result"], out)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
