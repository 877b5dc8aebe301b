"""Common-ancestor queries on infinite time-series DAGs.

Two vertices (i, t-tau) and (j, t) have a common ancestor iff there are
directed-or-trivial walks from a shared root k to i and to j whose weights
differ by exactly tau.  The realizable walk weights decompose into finitely
many affine cones, so the query reduces to finitely many linear Diophantine
solvability checks.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .diophantine import SolvabilityInstance, case_number, has_nonneg_solution
from .graph_model import TsGraphTemplate, ValidationError
from .summary_mwdg import (
    ConeTuple,
    CycleClass,
    MwSummaryGraph,
    Path,
    build_graph_of_cycles,
    build_mw_summary,
    cycle_free_paths,
    enumerate_cycle_classes,
    get_monoid,
    touch_set,
    tuple_sets,
)


def summary_prefilter(s: MwSummaryGraph, i: str, j: str) -> bool:
    """Necessary condition: i and j have a common ancestor in the unweighted
    summary graph.  False here implies no common ancestor at any lag."""
    dg = s.digraph().reverse()

    def up(node: str) -> set[str]:
        seen = {node}
        frontier = deque([node])
        while frontier:
            v = frontier.popleft()
            for u in dg.successors(v):
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        return seen

    return bool(up(i) & up(j))


class CommonAncestorEngine:
    """Caches the summary-graph machinery for repeated queries on one template."""

    def __init__(self, tpl: TsGraphTemplate):
        if tpl.bidirected_t:
            raise ValidationError(
                "common-ancestor queries require a ts-DAG; canonicalize first"
            )
        self.tpl = tpl
        self.summary = build_mw_summary(tpl)
        self.classes = sorted(enumerate_cycle_classes(self.summary))
        self.goc = build_graph_of_cycles(self.classes)
        self._paths: dict[tuple[str, str], tuple[Path, ...]] = {}
        # M_pi depends on pi only through its touch set, so memoize on that.
        self._monoids: dict[frozenset[CycleClass], frozenset[frozenset[CycleClass]]] = {}
        self._tuples: dict[
            tuple[int, Path, frozenset[CycleClass]], frozenset[ConeTuple]
        ] = {}
        self._answers: dict[tuple[str, int, str], bool] = {}

    def paths(self, k: str, i: str) -> tuple[Path, ...]:
        key = (k, i)
        if key not in self._paths:
            self._paths[key] = tuple(sorted(cycle_free_paths(self.summary, k, i)))
        return self._paths[key]

    def monoid(self, pi: Path) -> frozenset[frozenset[CycleClass]]:
        touch = touch_set(pi, self.classes)
        if touch not in self._monoids:
            self._monoids[touch] = get_monoid(pi, self.classes, self.goc)
        return self._monoids[touch]

    def tuples(self, tau: int, pi: Path, subset: frozenset[CycleClass]) -> frozenset[ConeTuple]:
        key = (tau, pi, subset)
        if key not in self._tuples:
            self._tuples[key] = tuple_sets(
                self.summary, tau, pi, subset, self.classes, self.goc
            )
        return self._tuples[key]

    def _instances(self, i: str, tau: int, j: str):
        for k in self.summary.nodes:
            for pi in self.paths(k, i):
                lhs_monoid = self.monoid(pi)
                for pj in self.paths(k, j):
                    rhs_monoid = self.monoid(pj)
                    for s_i in lhs_monoid:
                        for lhs in self.tuples(tau, pi, s_i):
                            for s_j in rhs_monoid:
                                for rhs in self.tuples(0, pj, s_j):
                                    yield SolvabilityInstance(lhs, rhs)

    def query(self, i: str, tau: int, j: str) -> bool:
        """Whether (i, t-tau) and (j, t) have a common ancestor (every vertex
        counts as its own ancestor)."""
        if tau < 0:
            raise ValidationError("tau must be non-negative")
        self.tpl.index(i), self.tpl.index(j)
        key = (i, tau, j)
        if key in self._answers:
            return self._answers[key]
        answer = self._decide(i, tau, j)
        self._answers[key] = answer
        return answer

    def _decide(self, i: str, tau: int, j: str) -> bool:
        if not summary_prefilter(self.summary, i, j):
            return False
        # Phase 1 settles all instances decidable by a gcd or equality test;
        # the potentially search-backed cases 2/4 are deferred to phase 2.
        deferred = []
        seen = set()
        for inst in self._instances(i, tau, j):
            if inst in seen:
                continue
            seen.add(inst)
            if case_number(inst) in (2, 4):
                deferred.append(inst)
            elif has_nonneg_solution(inst):
                return True
        return any(has_nonneg_solution(inst) for inst in deferred)


def have_common_ancestor(tpl: TsGraphTemplate, i: str, tau: int, j: str) -> bool:
    """One-shot form of :meth:`CommonAncestorEngine.query`."""
    return CommonAncestorEngine(tpl).query(i, tau, j)


def lag1_shortcut(tpl: TsGraphTemplate, i: str, tau: int, j: str) -> Optional[bool]:
    """Exact fast path when every variable has a lag-1 auto-edge: common
    ancestorship then coincides with the summary-graph check.  Returns None
    when not applicable."""
    if tpl.bidirected_t:
        return None
    if not all((v, 1, v) in tpl.directed_t for v in tpl.variables):
        return None
    return summary_prefilter(build_mw_summary(tpl), i, j)
