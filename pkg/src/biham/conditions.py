"""Degree-sum and min-degree conditions for balanced bipartite digraphs.

Every checker returns a ConditionReport.  A failed report carries the first
violating witness in lexicographic order, so reruns are byte-for-byte
reproducible and tests can pin exact witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import BipartiteDigraph, degree
from .matching import Matching
from .compat import contract, reachability_matrix


@dataclass(frozen=True)
class ConditionReport:
    name: str
    satisfied: bool
    bound: int
    witness: tuple[int, ...] | None = None
    witness_sum: int | None = None

    def __bool__(self) -> bool:
        return self.satisfied


def check_condition_M(d: BipartiteDigraph) -> ConditionReport:
    """Degree sum >= 3a+1 over every non-adjacent pair of distinct vertices.

    Vertices of the same class are never adjacent, so all same-class pairs
    are tested; a cross pair is exempt only when an arc joins it in at
    least one direction.
    """
    a = d.a
    bound = 3 * a + 1
    deg = [degree(d, v).total for v in range(d.n)]
    for u in range(d.n):
        for v in range(u + 1, d.n):
            if d.has_arc(u, v) or d.has_arc(v, u):
                continue
            if deg[u] + deg[v] < bound:
                return ConditionReport("M", False, bound, (u, v), deg[u] + deg[v])
    return ConditionReport("M", True, bound)


def check_condition_A(d: BipartiteDigraph, m: Matching) -> ConditionReport:
    """Degree sum >= 6a+2 over linked four-tuples (x', y', x'', y'').

    A tuple is tested when x' reaches y' and x'' reaches y'' by M-compatible
    paths and the four vertices are pairwise distinct.  Reachability runs on
    the contraction once; single arcs and matching arcs short-circuit.
    """
    if not m.validate(d):
        raise ValueError("check_condition_A needs a valid complete X->Y matching")
    a = d.a
    bound = 6 * a + 2
    deg = [degree(d, v).total for v in range(d.n)]
    cont = contract(d, m)
    reach = reachability_matrix(cont)
    y_of = {x: y for x, y in m.pairs}
    node_of_y = {y: x for x, y in m.pairs}

    linked: list[tuple[int, int]] = []
    for x in range(a):
        for y in range(a, 2 * a):
            if y_of[x] == y or d.has_arc(x, y) or reach[x] >> node_of_y[y] & 1:
                linked.append((x, y))

    for x1, y1 in linked:
        for x2, y2 in linked:
            if x1 == x2 or y1 == y2:
                continue
            if deg[x1] + deg[y1] + deg[x2] + deg[y2] < bound:
                return ConditionReport("A", False, bound, (x1, y1, x2, y2),
                                       deg[x1] + deg[y1] + deg[x2] + deg[y2])
    return ConditionReport("A", True, bound)


def check_min_degree(d: BipartiteDigraph) -> ConditionReport:
    """Total degree of every vertex >= ceil((3a+1)/2)."""
    bound = (3 * d.a + 2) // 2
    for v in range(d.n):
        t = degree(d, v).total
        if t < bound:
            return ConditionReport("min_degree", False, bound, (v,), t)
    return ConditionReport("min_degree", True, bound)


def check_half_degrees(d: BipartiteDigraph) -> ConditionReport:
    """Out- and in-degree of every vertex >= ceil((a+2)/2)."""
    bound = (d.a + 3) // 2
    for v in range(d.n):
        p = degree(d, v)
        if min(p.out, p.in_) < bound:
            return ConditionReport("half_degrees", False, bound, (v,), min(p.out, p.in_))
    return ConditionReport("half_degrees", True, bound)


def check_woodall_bipartite(d: BipartiteDigraph) -> ConditionReport:
    """d+(u) + d-(v) >= a+2 whenever u, v lie in opposite classes and the
    arc u -> v is absent.  Ordered pairs, so each cross pair is tested in
    both directions independently."""
    a = d.a
    bound = a + 2
    out_deg = [degree(d, v).out for v in range(d.n)]
    in_deg = [degree(d, v).in_ for v in range(d.n)]
    for u in range(d.n):
        for v in range(d.n):
            if d.class_of(u) == d.class_of(v) or d.has_arc(u, v):
                continue
            if out_deg[u] + in_deg[v] < bound:
                return ConditionReport("woodall", False, bound, (u, v),
                                       out_deg[u] + in_deg[v])
    return ConditionReport("woodall", True, bound)


ALL_CHECKS = {
    "M": check_condition_M,
    "min_degree": check_min_degree,
    "half_degrees": check_half_degrees,
    "woodall": check_woodall_bipartite,
}
