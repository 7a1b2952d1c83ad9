"""Command-line front end.

    exclgraph bounds --builtin chsh
    exclgraph scenario --builtin kcbs
    exclgraph membership --cycle 5 --body th --p 0.4472136,0.4472136,...
    exclgraph perfect --edges graph.json
    exclgraph or-verify --cycle 5 --or rep.json

Reports go to stdout (or ``-o FILE``) as JSON with floats rounded to nine
significant digits; diagnostics go to stderr. Exit codes: 0 success,
1 input error, 2 solver nonconvergence or undecided verdict, 3 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import DEFAULT_MAX_ITER, DEFAULT_TOL, OrderingViolation, bounds_report
from .graph import (
    CapExceeded,
    GraphError,
    VertexWeightedGraph,
    circulant,
    cycle_graph,
    enumerate_maximal_cliques,
    graph_from_json,
    graph_to_json,
    parse_graph6,
)
from .ortho import OrthonormalRepresentation, or_value, verify_or
from .scenario import (
    ScenarioError,
    chsh_expression,
    experiment_graph,
    expression_from_json,
    exclusivity_subgraph,
    kcbs_expression,
    scenario_from_json,
)
from .sdp import SolverNonConvergence
from .sets import AssignmentError, in_qstab, in_stab, in_th, is_perfect

log = logging.getLogger("exclgraph")

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_INTERNAL = 0, 1, 2, 3

BUILTIN_GRAPHS = {
    "chsh": lambda: circulant(8, [1, 4]),
    "kcbs": lambda: cycle_graph(5),
}
BUILTIN_SCENARIOS = {"chsh": chsh_expression, "kcbs": kcbs_expression}


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# -- output ----------------------------------------------------------------------


def _round(obj):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        return float(f"{obj:.9g}")
    if isinstance(obj, (np.floating, np.integer)):
        return _round(obj.item())
    if isinstance(obj, np.ndarray):
        return _round(obj.tolist())
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def render(obj) -> str:
    return json.dumps(_round(obj), indent=2) + "\n"


def _emit(args, obj) -> None:
    text = render(obj)
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


# -- inputs ----------------------------------------------------------------------


def _read_json(path: str, exact: bool = True):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        # exact rationals for assignments and weights written as decimals
        return json.loads(text, parse_float=Fraction if exact else float)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _jumps(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"jumps must be comma-separated integers, got {text!r}") from None


def _values(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"values must be comma-separated numbers or p/q, got {text!r}") from None


def load_graph(args) -> VertexWeightedGraph:
    if args.builtin:
        g = BUILTIN_GRAPHS[args.builtin]()
    elif args.cycle is not None:
        g = cycle_graph(args.cycle)
    elif args.circulant:
        n_text, jumps = args.circulant
        try:
            n = int(n_text)
        except ValueError:
            raise InputError(f"circulant order must be an integer, got {n_text!r}") from None
        g = circulant(n, _jumps(jumps))
    elif args.graph6:
        text = args.graph6
        if Path(text).is_file():
            text = Path(text).read_text()
        g = parse_graph6(text)
    elif args.edges:
        obj = _read_json(args.edges)
        if isinstance(obj, dict) and "weights" in obj and obj["weights"] is not None:
            obj = dict(obj, weights=[str(w) for w in obj["weights"]])
        g = graph_from_json(obj)
    else:
        raise InputError("no graph given: use --builtin, --cycle, --circulant, --graph6 or --edges")
    if args.weights:
        g = g.with_weights(_values(args.weights))
    return g


# -- commands --------------------------------------------------------------------


def cmd_bounds(args) -> tuple[dict, int]:
    g = load_graph(args)
    report = bounds_report(g, args.tol, args.max_iter)
    return report.to_json(), EXIT_OK


def _experiment_dump(s) -> dict:
    eg = experiment_graph(s)
    cliques = enumerate_maximal_cliques(eg.graph)
    sizes = {}
    for C in cliques:
        sizes[len(C)] = sizes.get(len(C), 0) + 1
    return {
        "n": eg.graph.n,
        "events": [str(e) for e in eg.events],
        "edges": [list(e) for e in eg.graph.edges()],
        "maximal_cliques": {str(k): sizes[k] for k in sorted(sizes)},
    }


def cmd_scenario(args) -> tuple[dict, int]:
    if args.builtin:
        s, expr = BUILTIN_SCENARIOS[args.builtin]()
        if args.no_expression:
            expr = None
    elif args.scenario:
        s = scenario_from_json(_read_json(args.scenario))
        expr = None
        if args.expression:
            obj = _read_json(args.expression)
            for t in obj.get("terms", []) if isinstance(obj, dict) else []:
                if isinstance(t, dict) and "weight" in t:
                    t["weight"] = str(t["weight"])
            expr = expression_from_json(obj)
    else:
        raise InputError("no scenario given: use a scenario file or --builtin")
    out = {"experiment": _experiment_dump(s)}
    if expr is not None:
        g = exclusivity_subgraph(s, expr)
        out["expression"] = {
            "graph": graph_to_json(g),
            "events": [str(e) for e in expr.events],
            "bounds": bounds_report(g, args.tol, args.max_iter).to_json(),
        }
    return out, EXIT_OK


def cmd_membership(args) -> tuple[dict, int]:
    g = load_graph(args)
    if args.p is not None:
        p = _values(args.p)
    elif args.assignment:
        obj = _read_json(args.assignment)
        if isinstance(obj, dict):
            obj = obj.get("p")
        if not isinstance(obj, list):
            raise InputError('assignment file must hold a list or {"p": [...]}')
        try:
            p = [Fraction(x) if isinstance(x, str) else x for x in obj]
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad assignment entry: {exc}") from None
    else:
        raise InputError("no assignment given: use --p or --assignment")
    if args.body == "stab":
        verdict = in_stab(g, p)
    elif args.body == "qstab":
        verdict = in_qstab(g, p)
    else:
        verdict = in_th(g, p, args.tol, args.max_iter)
    code = EXIT_OK if verdict.inside is not None else EXIT_SOLVER
    return verdict.to_json(), code


def cmd_perfect(args) -> tuple[dict, int]:
    res = is_perfect(load_graph(args))
    out = {"perfect": res.perfect, "witness": list(res.witness) if res.witness else None}
    if res.kind:
        out["kind"] = res.kind
    return out, EXIT_OK


def cmd_or_verify(args) -> tuple[dict, int]:
    g = load_graph(args)
    obj = _read_json(args.rep, exact=False)
    try:
        rep = OrthonormalRepresentation.from_json(obj)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        ok, violations = verify_or(g, rep, args.or_tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {
        "valid": ok,
        "value": or_value(rep, g.weights),
        "dim": rep.dim,
        "violations": [v._asdict() for v in violations],
    }
    return out, EXIT_OK


# -- parser ----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="solver tolerance (default %(default)g)")
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER, help="iteration budget (default %(default)d)")
    p.add_argument("--format", choices=["json"], default="json", help="output format")
    p.add_argument("-o", "--output", help="write the report here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")


def _graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", choices=sorted(BUILTIN_GRAPHS), help="CHSH circulant or KCBS pentagon")
    src.add_argument("--cycle", type=int, metavar="N", help="cycle graph C_N")
    src.add_argument("--circulant", nargs=2, metavar=("N", "J1,J2"), help="circulant graph on N vertices")
    src.add_argument("--graph6", metavar="STRING|FILE", help="graph6 string or file holding one")
    src.add_argument("--edges", metavar="FILE", help='JSON edge list {"n", "edges", "weights"?}')
    p.add_argument("--weights", metavar="W1,W2,...", help="override vertex weights")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="exclgraph", description="Classical, quantum and exclusivity bounds of weighted graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bounds", help="alpha, theta and alpha_star of a weighted graph")
    _graph_source(p)
    _common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("scenario", help="compile a scenario into its exclusivity graph")
    p.add_argument("scenario", nargs="?", help="scenario JSON file")
    p.add_argument("--expression", metavar="FILE", help="expression JSON file")
    p.add_argument("--builtin", choices=sorted(BUILTIN_SCENARIOS), help="built-in scenario with its expression")
    p.add_argument("--no-expression", action="store_true", help="with --builtin: dump the experiment graph only")
    _common(p)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("membership", help="test an assignment against STAB, TH or QSTAB")
    _graph_source(p)
    p.add_argument("--body", choices=["stab", "th", "qstab"], required=True)
    p.add_argument("--p", metavar="P1,P2,...", help="assignment as comma-separated values")
    p.add_argument("--assignment", metavar="FILE", help='JSON list or {"p": [...]}')
    _common(p)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("perfect", help="search for an odd hole or odd antihole")
    _graph_source(p)
    _common(p)
    p.set_defaults(func=cmd_perfect)

    p = sub.add_parser("or-verify", help="check an orthonormal representation with handle")
    _graph_source(p)
    p.add_argument("--or", dest="rep", metavar="FILE", required=True, help='OR JSON {"dim", "handle", "vectors"}')
    p.add_argument("--or-tol", type=float, default=1e-9, help="verification tolerance (default %(default)g)")
    _common(p)
    p.set_defaults(func=cmd_or_verify)
    return parser


def _error(code: str, detail: str) -> dict:
    return {"error": code, "detail": detail}


def run(argv=None) -> tuple[dict, int, argparse.Namespace | None]:
    """Parse and execute; returns the report, the exit code and the parsed args."""
    args = None
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
        if not args.tol > 0:
            raise InputError("--tol must be positive")
        if args.max_iter < 1:
            raise InputError("--max-iter must be at least 1")
        out, code = args.func(args)
        return out, code, args
    except CapExceeded as exc:
        return _error("cap_exceeded", str(exc)), EXIT_INPUT, args
    except (InputError, GraphError, ScenarioError, AssignmentError) as exc:
        return _error("input_error", str(exc)), EXIT_INPUT, args
    except SolverNonConvergence as exc:
        out = _error("nonconvergence", str(exc))
        out["bracket"] = {"lower": exc.lower, "upper": exc.upper}
        return out, EXIT_SOLVER, args
    except OrderingViolation as exc:
        return _error("ordering_violation", str(exc)), EXIT_INTERNAL, args
    except ValueError as exc:
        return _error("input_error", str(exc)), EXIT_INPUT, args


def main(argv=None) -> int:
    try:
        out, code, args = run(argv)
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    if code != EXIT_OK and "error" in out:
        sys.stderr.write(f"exclgraph: {out['error']}: {out['detail']}\n")
    try:
        _emit(args, out)
    except OSError as exc:
        sys.stdout.write(render(_error("output_error", str(exc))))
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
