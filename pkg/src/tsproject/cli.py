"""Command-line front end.

Subcommands: project-admg, project-dmag, ancestor, msep, cutoff, dioph,
verify.  Exit codes: 0 on success, 1 on validation errors, 2 on usage errors.
All serialized output uses a canonical edge ordering, so identical inputs and
flags produce byte-identical output.

The ``--window`` flag is the observed window length p: the window [t-p, t]
contains p + 1 time steps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import oracle_testkit
from .ancestor_query import CommonAncestorEngine, lag1_shortcut
from .diophantine import SolvabilityInstance, has_nonneg_solution
from .finite_projection import canonical_dag, dmag_project, m_separated
from .graph_model import (
    TsVertex,
    ValidationError,
    parse_mixed_graph,
    parse_template,
)
from .summary_mwdg import ConeTuple, touch_set, tuple_sets
from .ts_projection import (
    canonical_ts_dag,
    cutoff_bound,
    marginal_ts_admg,
    marginal_ts_dmag,
)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def _parse_vertices(spec: str) -> list[TsVertex]:
    """Parse 'X:1,Y:0' into vertices; an empty string yields the empty list."""
    vertices = []
    for token in filter(None, spec.split(",")):
        var, sep, offset = token.partition(":")
        if not sep:
            raise ValidationError(f"bad vertex token {token!r}; expected VAR:OFFSET")
        try:
            vertices.append(TsVertex(var, int(offset)))
        except ValueError:
            raise ValidationError(f"bad offset in vertex token {token!r}") from None
    return vertices


def _parse_cone_tuple(spec: str) -> ConeTuple:
    """Parse 'a0;c1,c2,...' (the coefficient part may be empty)."""
    head, _, tail = spec.partition(";")
    try:
        a0 = int(head)
        coeffs = tuple(int(c) for c in filter(None, tail.split(",")))
    except ValueError:
        raise ValidationError(f"bad tuple {spec!r}; expected 'a0;c1,c2'") from None
    return ConeTuple(a0=a0, coeffs=coeffs)


def _emit_graph(graph, args) -> None:
    text = graph.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.dot:
        Path(args.dot).write_text(graph.to_dot())


def _cmd_project(args, want_dmag: bool) -> int:
    tpl = parse_template(_read(args.graph))
    observed = [v for v in args.observed.split(",") if v]
    if args.method == "window":
        ctpl = canonical_ts_dag(tpl)
        w = cutoff_bound(ctpl, args.window).p_cut + args.window
        marginal = oracle_testkit.window_marginal(tpl, observed, args.window, w)
        if want_dmag:
            dag = canonical_dag(marginal)
            marginal = dmag_project(dag, marginal.vertices)
    elif want_dmag:
        marginal = marginal_ts_dmag(tpl, observed, args.window, jobs=args.jobs)
    else:
        marginal = marginal_ts_admg(tpl, observed, args.window, jobs=args.jobs)
    _emit_graph(marginal, args)
    return 0


def _explain_dump(engine: CommonAncestorEngine, i: str, tau: int, j: str) -> dict:
    classes = engine.classes
    doc = {
        "classes": [
            {"representative": list(c.representative), "weights": list(c.weights)}
            for c in classes
        ],
        "graph_of_cycles": sorted(
            sorted([list(c.representative) for c in edge]) for edge in engine.goc.edges
        ),
        "roots": [],
    }
    for k in engine.summary.nodes:
        entry = {"root": k, "paths_to_i": [], "paths_to_j": []}
        for side, target, tau_side in (
            ("paths_to_i", i, tau),
            ("paths_to_j", j, 0),
        ):
            for pi in engine.paths(k, target):
                monoid = engine.monoid(pi)
                tuples = sorted(
                    {
                        (t.a0, t.coeffs)
                        for subset in monoid
                        for t in tuple_sets(
                            engine.summary, tau_side, pi, subset, classes, engine.goc
                        )
                    }
                )
                entry[side].append(
                    {
                        "path": list(pi),
                        "touch": sorted(
                            "-".join(c.representative)
                            for c in touch_set(pi, classes)
                        ),
                        "monoid_size": len(monoid),
                        "tuples": [[a0, list(coeffs)] for a0, coeffs in tuples],
                    }
                )
        doc["roots"].append(entry)
    return doc


def _cmd_ancestor(args) -> int:
    tpl = canonical_ts_dag(parse_template(_read(args.graph)))
    if args.method == "window":
        w = cutoff_bound(tpl, args.tau).p_cut + args.tau
        answer = oracle_testkit.window_common_ancestor(tpl, args.i, args.tau, args.j, w)
    else:
        engine = CommonAncestorEngine(tpl)
        answer = engine.query(args.i, args.tau, args.j)
        if args.explain:
            sys.stderr.write(
                json.dumps(_explain_dump(engine, args.i, args.tau, args.j), indent=2)
                + "\n"
            )
    print("true" if answer else "false")
    return 0


def _cmd_msep(args) -> int:
    graph = parse_mixed_graph(_read(args.marginal))
    separated = m_separated(
        graph,
        _parse_vertices(args.x),
        _parse_vertices(args.y),
        _parse_vertices(args.z),
    )
    print("true" if separated else "false")
    return 0


def _cmd_cutoff(args) -> int:
    tpl = canonical_ts_dag(parse_template(_read(args.graph)))
    q = cutoff_bound(tpl, args.window)
    print(f"K={q.K} L={q.L} M={q.M} p_cut={q.p_cut}")
    return 0


def _cmd_dioph(args) -> int:
    inst = SolvabilityInstance(
        lhs=_parse_cone_tuple(args.lhs), rhs=_parse_cone_tuple(args.rhs)
    )
    print("true" if has_nonneg_solution(inst) else "false")
    return 0


def _cmd_verify(args) -> int:
    seed = args.seed
    failures = []

    def report(name: str, ok: bool) -> None:
        print(f"{name}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            failures.append(name)

    ok = True
    for n in range(args.templates):
        tpl = oracle_testkit.random_template(
            seed * 1000 + n, n_vars=3, max_lag=2, edge_density=0.2
        )
        p = n % 3
        w = cutoff_bound(tpl, p).p_cut + p
        mine = marginal_ts_admg(tpl, tpl.variables, p)
        ref = oracle_testkit.window_marginal(tpl, tpl.variables, p, w)
        if mine != ref:
            ok = False
            break
    report("marginal-vs-window-oracle", ok)

    ok = True
    for n in range(args.queries):
        tpl = oracle_testkit.random_template(
            seed * 2000 + n, n_vars=3, max_lag=2, edge_density=0.25
        )
        engine = CommonAncestorEngine(tpl)
        w = cutoff_bound(tpl, 3).p_cut + 3
        if w > 400:  # the naive oracle is quadratic in the window length
            continue
        for i in tpl.variables:
            for j in tpl.variables:
                for tau in range(3):
                    if engine.query(i, tau, j) != oracle_testkit.window_common_ancestor(
                        tpl, i, tau, j, w
                    ):
                        ok = False
        shortcut_tpl = oracle_testkit.random_template(
            seed * 3000 + n, n_vars=3, max_lag=2, edge_density=0.2
        )
        lag1 = make_all_lag1(shortcut_tpl)
        engine = CommonAncestorEngine(lag1)
        for i in lag1.variables:
            for j in lag1.variables:
                hinted = lag1_shortcut(lag1, i, 1, j)
                if hinted is not None and hinted != engine.query(i, 1, j):
                    ok = False
    report("ancestor-vs-window-oracle", ok)

    return 0 if not failures else 1


def make_all_lag1(tpl):
    """Extend a template with lag-1 auto-edges on every variable."""
    from .graph_model import make_template

    return make_template(
        tpl.variables,
        directed=set(tpl.directed_t) | {(v, 1, v) for v in tpl.variables},
        bidirected=tpl.bidirected_t,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tsproject",
        description="Finite-window projections and queries on stationary time-series graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_projection(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--graph", required=True, help="template JSON file")
        p.add_argument("--observed", required=True, help="comma-separated variable names")
        p.add_argument("--window", required=True, type=int, help="observed window length p")
        p.add_argument("--method", choices=["dioph", "window"], default="dioph")
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--dot", help="also write a DOT rendering to this file")
        p.add_argument("--jobs", type=int, default=1)
        return p

    add_projection("project-admg", "marginal ts-ADMG on a finite window")
    add_projection("project-dmag", "marginal ts-DMAG on a finite window")

    p = sub.add_parser("ancestor", help="common-ancestor query on an infinite ts-DAG")
    p.add_argument("--graph", required=True)
    p.add_argument("--i", required=True)
    p.add_argument("--tau", required=True, type=int)
    p.add_argument("--j", required=True)
    p.add_argument("--method", choices=["dioph", "window", "auto"], default="auto")
    p.add_argument("--explain", action="store_true", help="dump the cone machinery to stderr")

    p = sub.add_parser("msep", help="m-separation query on a serialized finite graph")
    p.add_argument("--marginal", required=True)
    p.add_argument("--x", required=True, help="vertices as VAR:OFFSET, comma-separated")
    p.add_argument("--y", required=True)
    p.add_argument("--z", default="")

    p = sub.add_parser("cutoff", help="print the cutoff-window quantities K, L, M, p_cut")
    p.add_argument("--graph", required=True)
    p.add_argument("--window", required=True, type=int)

    p = sub.add_parser("dioph", help="ad-hoc solvability check for two cone tuples")
    p.add_argument("--lhs", required=True, help="tuple as 'a0;c1,c2'")
    p.add_argument("--rhs", required=True)

    p = sub.add_parser("verify", help="run the oracle-equivalence suites")
    p.add_argument(
        "--seed", type=int, default=int(os.environ.get("TSPROJECT_SEED", "0"))
    )
    p.add_argument("--templates", type=int, default=25)
    p.add_argument("--queries", type=int, default=10)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "project-admg":
            return _cmd_project(args, want_dmag=False)
        if args.command == "project-dmag":
            return _cmd_project(args, want_dmag=True)
        if args.command == "ancestor":
            return _cmd_ancestor(args)
        if args.command == "msep":
            return _cmd_msep(args)
        if args.command == "cutoff":
            return _cmd_cutoff(args)
        if args.command == "dioph":
            return _cmd_dioph(args)
        if args.command == "verify":
            return _cmd_verify(args)
        parser.error(f"unknown command {args.command}")
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
