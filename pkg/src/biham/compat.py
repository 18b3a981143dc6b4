"""Matching-compatible structure: contraction, paths, reachability, cycles.

A path or cycle is compatible with a complete matching M (X->Y) when its
arcs alternate between M and the rest of the arc set.  Since Y->X arcs are
never matching arcs, an interior X->Y arc of a compatible walk is forced to
lie in M.  That makes the whole subject equivalent to plain digraph
reachability on the contraction: one node per matched pair (x_p, M(x_p)),
with an arc p -> q exactly when M(x_p) x_q is an arc of D.  The only
compatible walks invisible to the contraction are single arcs, which are
alternating by vacuity; the path search below special-cases them.

Everything returned here is a certificate that re-validates against D and M
without trusting the search that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import BipartiteDigraph, MAX_A
from .matching import Matching


class CapExceeded(ValueError):
    """An exact search was asked to run beyond its documented size cap."""


@dataclass(frozen=True)
class ContractedDigraph:
    """Digraph on matched pairs; node p stands for (x_p, M(x_p))."""

    a: int
    y_of: tuple[int, ...]  # y_of[p] = M(x_p); x id of node p is p itself
    out_masks: tuple[int, ...]

    def has_arc(self, p: int, q: int) -> bool:
        return bool(self.out_masks[p] >> q & 1)


def contract(d: BipartiteDigraph, m: Matching) -> ContractedDigraph:
    if m.direction != "XY" or not m.validate(d):
        raise ValueError("contract needs a valid complete X->Y matching")
    a = d.a
    y_of = [0] * a
    for x, y in m.pairs:
        y_of[x] = y
    out_masks = []
    for p in range(a):
        mask = d.out_mask(y_of[p]) & d.x_mask & ~(1 << p)
        out_masks.append(mask)
    return ContractedDigraph(a, tuple(y_of), tuple(out_masks))


@dataclass(frozen=True)
class PathCertificate:
    """Open compatible walk: vertices plus one in-matching flag per arc."""

    vertices: tuple[int, ...]
    in_matching: tuple[bool, ...]

    @property
    def length(self) -> int:
        return len(self.in_matching)

    def validate(self, d: BipartiteDigraph, m: Matching) -> bool:
        vs, flags = self.vertices, self.in_matching
        if len(vs) < 2 or len(flags) != len(vs) - 1:
            return False
        if len(set(vs)) != len(vs):
            return False
        pairs = set(m.pairs)
        for i, flag in enumerate(flags):
            u, v = vs[i], vs[i + 1]
            if not d.has_arc(u, v):
                return False
            if ((u, v) in pairs) != flag:
                return False
            if i and flags[i - 1] == flag:
                return False
        return True


@dataclass(frozen=True)
class CycleCertificate:
    """Closed compatible walk; arc i runs vertices[i] -> vertices[i+1 mod n]."""

    vertices: tuple[int, ...]
    in_matching: tuple[bool, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def validate(self, d: BipartiteDigraph, m: Matching) -> bool:
        vs, flags = self.vertices, self.in_matching
        k = len(vs)
        if k < 4 or k % 2 or len(flags) != k:
            return False
        if len(set(vs)) != k:
            return False
        pairs = set(m.pairs)
        for i in range(k):
            u, v = vs[i], vs[(i + 1) % k]
            if not d.has_arc(u, v):
                return False
            if ((u, v) in pairs) != flags[i]:
                return False
            if flags[i] == flags[i - 1]:
                return False
        return True

    def matched_pairs(self) -> tuple[tuple[int, int], ...]:
        """The matching arcs the cycle uses, as (x, y) pairs."""
        vs, flags = self.vertices, self.in_matching
        return tuple(sorted((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)) if flags[i]))


# ---------------------------------------------------------------------------
# expansion between contraction and D


def expand_nodes(cont: ContractedDigraph, nodes: list[int]) -> list[int]:
    """Contraction node sequence -> D vertex sequence (x_p, y_p per node)."""
    out = []
    for p in nodes:
        out.append(p)
        out.append(cont.y_of[p])
    return out


def path_certificate_from_nodes(cont: ContractedDigraph, nodes: list[int],
                                drop_head: bool = False, drop_tail: bool = False) -> PathCertificate:
    """Expand a contraction path; optionally trim the first x or last y.

    Trimming lets the same expansion serve all four endpoint-class cases of
    the compatible-path search.
    """
    vs = expand_nodes(cont, nodes)
    if drop_head:
        vs = vs[1:]
    if drop_tail:
        vs = vs[:-1]
    flags = tuple(v < cont.a for v in vs[:-1])  # arc from an X vertex = matching arc
    return PathCertificate(tuple(vs), flags)


def cycle_certificate_from_nodes(cont: ContractedDigraph, nodes: list[int]) -> CycleCertificate:
    k = min(range(len(nodes)), key=lambda i: nodes[i])
    nodes = nodes[k:] + nodes[:k]  # canonical rotation: smallest node first
    vs = expand_nodes(cont, nodes)
    flags = tuple(v < cont.a for v in vs)
    return CycleCertificate(tuple(vs), flags)


# ---------------------------------------------------------------------------
# shortest contraction paths (lexicographically smallest among shortest)


def _dists_to(cont: ContractedDigraph, dst: int) -> list[int]:
    """BFS distance from every node to dst along contraction arcs."""
    big = 1 << 30
    dist = [big] * cont.a
    dist[dst] = 0
    frontier = [dst]
    while frontier:
        nxt = []
        for q in frontier:
            for p in range(cont.a):
                if cont.has_arc(p, q) and dist[p] > dist[q] + 1:
                    dist[p] = dist[q] + 1
                    nxt.append(p)
        frontier = nxt
    return dist


def _lex_shortest_path(cont: ContractedDigraph, src: int, dst: int) -> list[int] | None:
    """Shortest src->dst node path, ties broken to the lex-smallest sequence."""
    dist = _dists_to(cont, dst)
    if dist[src] >= 1 << 30:
        return None
    path = [src]
    cur = src
    while cur != dst:
        m = cont.out_masks[cur]
        step = None
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            if dist[w] == dist[cur] - 1:
                step = w  # smallest id first: take it and stop scanning
                break
        path.append(step)
        cur = step
    return path


def _lex_shortest_cycle_through(cont: ContractedDigraph, p: int) -> list[int] | None:
    """Shortest directed cycle through node p, lex-smallest among shortest."""
    best: list[int] | None = None
    m = cont.out_masks[p]
    while m:
        s = (m & -m).bit_length() - 1
        m &= m - 1
        sub = _lex_shortest_path(cont, s, p)
        if sub is None:
            continue
        cand = [p] + sub[:-1]
        if best is None or (len(cand), cand) < (len(best), best):
            best = cand
    return best


# ---------------------------------------------------------------------------
# compatible paths and reachability


def compatible_path(d: BipartiteDigraph, m: Matching, u: int, v: int) -> PathCertificate | None:
    """Shortest M-compatible path from u to v, or None.

    Single arcs are compatible whatever their matching status; anything
    longer reduces to a path in the contraction, trimmed at the ends to
    match the endpoint classes.
    """
    if u == v:
        raise ValueError("compatible_path endpoints must differ")
    cont = contract(d, m)
    a = d.a
    x_of_y = {y: x for x, y in m.pairs}

    if u < a and v >= a:
        if m.as_dict()[u] == v:
            return PathCertificate((u, v), (True,))
        if d.has_arc(u, v):
            return PathCertificate((u, v), (False,))
        nodes = _lex_shortest_path(cont, u, x_of_y[v])
        return None if nodes is None else path_certificate_from_nodes(cont, nodes)

    if u < a and v < a:
        nodes = _lex_shortest_path(cont, u, v)
        return None if nodes is None else path_certificate_from_nodes(cont, nodes, drop_tail=True)

    if u >= a and v < a:
        if d.has_arc(u, v):
            return PathCertificate((u, v), (False,))
        q = x_of_y[u]
        if q == v:
            nodes = _lex_shortest_cycle_through(cont, q)
            if nodes is None:
                return None
            return path_certificate_from_nodes(cont, nodes + [nodes[0]],
                                               drop_head=True, drop_tail=True)
        nodes = _lex_shortest_path(cont, q, v)
        return None if nodes is None else path_certificate_from_nodes(
            cont, nodes, drop_head=True, drop_tail=True)

    # u, v both in Y
    nodes = _lex_shortest_path(cont, x_of_y[u], x_of_y[v])
    return None if nodes is None else path_certificate_from_nodes(cont, nodes, drop_head=True)


def _reach_from(cont: ContractedDigraph, p: int) -> int:
    """Nodes reachable from p in one or more contraction steps (bitmask)."""
    seen = 0
    frontier = cont.out_masks[p]
    while frontier & ~seen:
        seen |= frontier
        nxt = 0
        f = frontier
        while f:
            w = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= cont.out_masks[w]
        frontier = nxt & ~seen
    return seen


def compatible_reach_set(d: BipartiteDigraph, m: Matching, y: int) -> int:
    """Y-vertices (excluding y) reachable from y by a compatible path."""
    if y < d.a:
        raise ValueError(f"vertex {y} is not in class Y")
    x_of_y = {yy: x for x, yy in m.pairs}
    cont = contract(d, m)
    reached = _reach_from(cont, x_of_y[y])
    out = 0
    p = reached
    while p:
        q = (p & -p).bit_length() - 1
        p &= p - 1
        out |= 1 << cont.y_of[q]
    return out & ~(1 << y)


def reachability_matrix(cont: ContractedDigraph) -> tuple[int, ...]:
    """reach[p] = nodes reachable from p in >= 1 steps, for all p."""
    return tuple(_reach_from(cont, p) for p in range(cont.a))


def xy_path_exists(d: BipartiteDigraph, m: Matching, reach: tuple[int, ...],
                   x: int, y: int) -> bool:
    """Is there an M-compatible path from x in X to y in Y?  Uses a
    precomputed contraction reachability matrix."""
    mdict = m.as_dict()
    if mdict[x] == y or d.has_arc(x, y):
        return True
    q = next(p for p, yy in enumerate(_y_of(m)) if yy == y)
    return bool(reach[x] >> q & 1)


def _y_of(m: Matching) -> tuple[int, ...]:
    ys = [0] * len(m.pairs)
    for x, y in m.pairs:
        ys[x] = y
    return tuple(ys)


# ---------------------------------------------------------------------------
# longest compatible cycles


def _max_cycle_exact(cont: ContractedDigraph) -> list[int] | None:
    """Maximum directed cycle in the contraction, lex-smallest among optima.

    Per start node s (ascending, restricted to nodes >= s so each cycle is
    examined exactly once, rooted at its minimum node) run a memoized DFS:
    g(last, mask) = the largest number of further nodes a simple path from
    `last` can collect before closing back to s, or -1 if it cannot close.
    The best cycle is then rebuilt greedily, taking the smallest feasible
    next node at every step.
    """
    n = cont.a
    out = cont.out_masks
    best_len = 0
    best_start = -1
    memos: dict[int, dict[tuple[int, int], int]] = {}

    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << s) - 1)
        memo: dict[tuple[int, int], int] = {}

        def g(last: int, mask: int) -> int:
            key = (last, mask)
            got = memo.get(key)
            if got is not None:
                return got
            best = 0 if out[last] >> s & 1 else -1
            m = out[last] & allowed & ~mask
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                r = g(w, mask | 1 << w)
                if r >= 0 and r + 1 > best:
                    best = r + 1
            memo[key] = best
            return best

        extra = g(s, 1 << s)
        memos[s] = memo
        if extra >= 1 and extra + 1 > best_len:
            best_len = extra + 1
            best_start = s
        if best_len == n - s:  # no later start can beat this
            break

    if best_start < 0:
        return None

    s = best_start
    memo = memos[s]
    allowed = ((1 << n) - 1) & ~((1 << s) - 1)

    def g2(last: int, mask: int) -> int:
        key = (last, mask)
        got = memo.get(key)
        if got is not None:
            return got
        best = 0 if out[last] >> s & 1 else -1
        m = out[last] & allowed & ~mask
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            r = g2(w, mask | 1 << w)
            if r >= 0 and r + 1 > best:
                best = r + 1
        memo[key] = best
        return best

    cycle = [s]
    mask = 1 << s
    need = best_len - 1
    cur = s
    while need:
        m = out[cur] & allowed & ~mask
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            if g2(w, mask | 1 << w) >= need - 1:
                cycle.append(w)
                mask |= 1 << w
                cur = w
                need -= 1
                break
        else:
            raise AssertionError("cycle reconstruction lost the optimum")
    return cycle


def _chord_best(cont: ContractedDigraph, path: list[int]) -> list[int] | None:
    """Longest cycle closable by one chord over a node path, ties lex."""
    pos = {p: i for i, p in enumerate(path)}
    best: list[int] | None = None
    for j, p in enumerate(path):
        m = cont.out_masks[p]
        while m:
            q = (m & -m).bit_length() - 1
            m &= m - 1
            i = pos.get(q)
            if i is None or i > j:
                continue
            cand = path[i:j + 1]
            k = min(range(len(cand)), key=lambda t: cand[t])
            cand = cand[k:] + cand[:k]
            if best is None or len(cand) > len(best) or \
               (len(cand) == len(best) and cand < best):
                best = cand
    return best


def _grow_maximal(cont: ContractedDigraph, path: list[int]) -> list[int]:
    """Extend a node path forward then backward until stuck (smallest id)."""
    in_path = set(path)
    while True:
        m = cont.out_masks[path[-1]]
        w = -1
        while m:
            c = (m & -m).bit_length() - 1
            m &= m - 1
            if c not in in_path:
                w = c
                break
        if w < 0:
            break
        path.append(w)
        in_path.add(w)
    while True:
        w = -1
        for c in range(cont.a):
            if c not in in_path and cont.has_arc(c, path[0]):
                w = c
                break
        if w < 0:
            break
        path.insert(0, w)
        in_path.add(w)
    return path


def _max_cycle_heuristic(cont: ContractedDigraph) -> list[int] | None:
    """Rotation/extension loop: maximal path, chord closures, endpoint swaps.

    The two transformations mirror the pair-swap moves of the extension
    procedure: replace the nodes just inside either end of a maximal path
    with a fresh outside node when one of their neighbours allows it, then
    re-maximalize and try chords again.  Hard-capped at 4a^2 iterations.
    """
    n = cont.a
    starts = [p for p in range(n) if cont.out_masks[p]]
    if not starts:
        return None
    path = _grow_maximal(cont, [starts[0]])
    best = _chord_best(cont, path)
    seen = {tuple(path)}
    for _ in range(4 * n * n):
        nxt: list[int] | None = None
        in_path = set(path)
        if len(path) >= 2:
            # tail swap: second-to-last node has an out-neighbour outside
            m = cont.out_masks[path[-2]] if len(path) >= 2 else 0
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                if w not in in_path:
                    nxt = path[:-1] + [w]
                    break
            if nxt is None:
                # head swap: second node has an in-neighbour outside
                for w in range(n):
                    if w not in in_path and len(path) >= 2 and cont.has_arc(w, path[1]):
                        nxt = [w] + path[1:]
                        break
        if nxt is None:
            break
        path = _grow_maximal(cont, nxt)
        key = tuple(path)
        if key in seen:
            break
        seen.add(key)
        cand = _chord_best(cont, path)
        if cand is not None and (best is None or len(cand) > len(best)
                                 or (len(cand) == len(best) and cand < best)):
            best = cand
    return best


def longest_compatible_cycle(d: BipartiteDigraph, m: Matching,
                             mode: str = "exact") -> CycleCertificate | None:
    """Longest M-compatible cycle of D, or None if the contraction is acyclic.

    exact: branch-and-bound DFS over (node, visited mask); optimal.
    heuristic: the maximal-path extension procedure; if its best find is
    shorter than the a-vertex guarantee it re-runs exact (the guarantee only
    binds when the four-endpoint degree condition holds, but the fallback is
    cheap insurance either way).
    """
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"mode must be 'exact' or 'heuristic', got {mode!r}")
    if d.a > MAX_A:
        raise CapExceeded(f"exact cycle search capped at a <= {MAX_A}")
    cont = contract(d, m)
    if mode == "exact":
        nodes = _max_cycle_exact(cont)
    else:
        nodes = _max_cycle_heuristic(cont)
        if nodes is None or 2 * len(nodes) < d.a:
            exact = _max_cycle_exact(cont)
            if exact is not None and (nodes is None or len(exact) > len(nodes)):
                nodes = exact
    if nodes is None:
        return None
    return cycle_certificate_from_nodes(cont, nodes)
