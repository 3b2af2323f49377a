"""Command-line interface: solve and check instances, run the exhaustive
lemma and theorem verification suites, query the exact oracle, and generate
instances.

Reports are JSON with sorted keys on standard output.  Exit codes: 0 on
success, 1 on I/O or format errors, 2 on hypothesis violations (including
failed verifications), 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .edgelist import EdgeListError, emit_edge_list, parse_edge_list
from .exchanges import HypothesisError, WitnessNotFoundError
from .graph import Graph
from .harness import verify_lemma, verify_theorem
from .oracle import LEMMA_IDS, GeneratorSpec, exact_partition, random_graph
from .solver import check_conditions, solve

EXIT_OK = 0
EXIT_IO = 1
EXIT_HYPOTHESIS = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code pinned to 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {text}")
    return value


def _jsonable(value):
    """Make report payloads JSON-friendly: infinities become "infinite",
    sets become sorted lists, tuples become lists."""
    if isinstance(value, float) and math.isinf(value):
        return "infinite"
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    return value


def _dump(payload) -> None:
    print(json.dumps(_jsonable(payload), sort_keys=True, indent=2))


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_edge_list(handle.read())


def _conditions_payload(report) -> dict:
    return {
        "n": report.n,
        "r": report.r,
        "s": report.s,
        "sigma2": report.sigma2,
        "order_ok": report.order_ok,
        "sigma_ok": report.sigma_ok,
        "ratio_ok": report.ratio_ok,
    }


def _cmd_solve(args) -> int:
    g = _load_graph(args.input)
    report = check_conditions(g, args.r, args.s)
    trace: list = []
    payload = {
        "conditions": _conditions_payload(report),
        "status": "ok",
        "error": None,
        "triangles": None,
        "quadrilaterals": None,
        "remainder": None,
        "trace": None,
    }
    code = EXIT_OK
    try:
        packing = solve(g, args.r, args.s, budget=args.budget, trace=trace)
        payload["triangles"] = [list(c.vertices) for c in packing.triangles]
        payload["quadrilaterals"] = [list(c.vertices) for c in packing.quadrilaterals]
        payload["remainder"] = sorted(packing.remainder)
    except (HypothesisError, WitnessNotFoundError) as exc:
        payload["status"] = "error"
        payload["error"] = {
            "kind": getattr(exc, "kind", "witness-not-found"),
            "stage": getattr(exc, "stage", None),
            "message": str(exc),
            "ledger": getattr(exc, "ledger", {}),
        }
        code = EXIT_HYPOTHESIS
    payload["trace"] = [[p.stage, p.m_value] for p in trace]
    if args.trace:
        for p in trace:
            print(f"stage={p.stage} m={p.m_value}", file=sys.stderr)
    _dump(payload)
    return code


def _cmd_check(args) -> int:
    g = _load_graph(args.input)
    _dump(_conditions_payload(check_conditions(g, args.r, args.s)))
    return EXIT_OK


def _cmd_verify_lemma(args) -> int:
    result = verify_lemma(args.lemma, exhaustive=args.exhaustive)
    print(f"lemma {args.lemma} ({'exhaustive' if args.exhaustive else 'minimal patterns'})")
    print(result.summary())
    for failure in result.failures:
        print(f"  cross mask {failure['cross_mask']:#x}: {failure['problems']}")
    return EXIT_OK if result.complete else EXIT_HYPOTHESIS


def _cmd_verify_theorem(args) -> int:
    result = verify_theorem(args.n, args.r, args.s, workers=args.workers)
    print(result.summary())
    return EXIT_OK if result.complete else EXIT_HYPOTHESIS


def _cmd_oracle(args) -> int:
    g = _load_graph(args.input)
    if g.n != 3 * args.r + 4 * args.s:
        print(
            f"error: graph has {g.n} vertices but 3r + 4s = {3 * args.r + 4 * args.s}",
            file=sys.stderr,
        )
        return EXIT_HYPOTHESIS
    packing = exact_partition(g, args.r, args.s)
    if packing is None:
        _dump({"found": False, "triangles": None, "quadrilaterals": None})
    else:
        _dump(
            {
                "found": True,
                "triangles": [list(c.vertices) for c in packing.triangles],
                "quadrilaterals": [list(c.vertices) for c in packing.quadrilaterals],
            }
        )
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.kind == "conditioned" and args.r is None:
        print("error: conditioned generation needs --r", file=sys.stderr)
        return EXIT_USAGE
    kind = "uniform-random" if args.kind == "random" else "condition-filtered"
    spec = GeneratorSpec(
        kind=kind, n=args.n, p=args.p, seed=args.seed, r=args.r, s=args.s
    )
    sys.stdout.write(emit_edge_list(random_graph(spec)))
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="triquad", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_solve = sub.add_parser("solve", help="partition a graph into triangles and quadrilaterals")
    p_solve.add_argument("--input", required=True, help="edge-list file")
    p_solve.add_argument("--r", required=True, type=_positive_int, help="triangle count")
    p_solve.add_argument("--s", required=True, type=_positive_int, help="quadrilateral count")
    p_solve.add_argument("--budget", type=_positive_int, default=None,
                         help="node budget for the initial packing search")
    p_solve.add_argument("--trace", action="store_true",
                         help="echo the potential trace to standard error")
    p_solve.set_defaults(handler=_cmd_solve)

    p_check = sub.add_parser("check", help="report the instance's hypothesis flags")
    p_check.add_argument("--input", required=True)
    p_check.add_argument("--r", required=True, type=_positive_int)
    p_check.add_argument("--s", required=True, type=_positive_int)
    p_check.set_defaults(handler=_cmd_check)

    p_vl = sub.add_parser("verify-lemma", help="exhaustive witness sweep for one exchange operation")
    p_vl.add_argument("--lemma", required=True, choices=list(LEMMA_IDS))
    p_vl.add_argument("--exhaustive", action="store_true",
                      help="every qualifying cross-edge pattern, not just minimal ones")
    p_vl.set_defaults(handler=_cmd_verify_lemma)

    p_vt = sub.add_parser("verify-theorem", help="exhaustive solver-vs-oracle comparison")
    p_vt.add_argument("--n", required=True, type=_positive_int)
    p_vt.add_argument("--r", required=True, type=_positive_int)
    p_vt.add_argument("--s", required=True, type=_positive_int)
    p_vt.add_argument("--workers", type=_positive_int, default=1)
    p_vt.set_defaults(handler=_cmd_verify_theorem)

    p_oracle = sub.add_parser("oracle", help="exact partition existence, independent of the solver")
    p_oracle.add_argument("--input", required=True)
    p_oracle.add_argument("--r", required=True, type=_positive_int)
    p_oracle.add_argument("--s", required=True, type=_positive_int)
    p_oracle.set_defaults(handler=_cmd_oracle)

    p_gen = sub.add_parser("gen", help="generate a reproducible instance")
    p_gen.add_argument("--kind", required=True, choices=["random", "conditioned"])
    p_gen.add_argument("--n", required=True, type=_positive_int)
    p_gen.add_argument("--p", required=True, type=_probability)
    p_gen.add_argument("--seed", required=True, type=int)
    p_gen.add_argument("--r", type=_positive_int, default=None)
    p_gen.add_argument("--s", type=_positive_int, default=None)
    p_gen.set_defaults(handler=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except EdgeListError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (HypothesisError, WitnessNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    sys.exit(main())
