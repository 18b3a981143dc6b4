"""Instance generators: block families, random instances, enumeration.

The three block families are standard tightness witnesses: digraphs with
large minimum degree or semi-degrees that still have no hamiltonian cycle.
Every generator validates its parameters and builds through new_digraph, so
the class invariants hold for whatever comes out.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Iterator

from .digraph import BipartiteDigraph, arc_order, from_arc_bitmask, new_digraph


def gen_complete(a: int) -> BipartiteDigraph:
    """All 2a^2 cross arcs, both directions."""
    arcs = [(x, y) for x in range(a) for y in range(a, 2 * a)]
    arcs += [(y, x) for x, y in arcs]
    return new_digraph(a, arcs)


def gen_Dprime(a: int) -> BipartiteDigraph:
    """Half-half block construction with every degree exactly 3a/2.

    Split X into R, S and Y into U, W, all of size a/2.  R dominates Y, U
    dominates X, and S, W see each other both ways.  S and W have no arcs
    out of their union, so the digraph is not strongly connected, let alone
    hamiltonian, yet it meets the minimum-degree bound with equality minus
    a half unit.
    """
    if a < 2 or a % 2:
        raise ValueError(f"a must be even and >= 2, got {a}")
    h = a // 2
    r_set = range(h)
    s_set = range(h, a)
    u_set = range(a, a + h)
    w_set = range(a + h, 2 * a)
    arcs = [(r, y) for r in r_set for y in range(a, 2 * a)]
    arcs += [(u, x) for u in u_set for x in range(a)]
    arcs += [(s, w) for s in s_set for w in w_set]
    arcs += [(w, s) for s in s_set for w in w_set]
    return new_digraph(a, arcs)


def gen_Dak(a: int, k: int) -> BipartiteDigraph:
    """Block family with minimum degree a+k and no hamiltonian cycle.

    R (k vertices of X) and all of Y trade arcs both ways, as do U (k
    vertices of Y) and all of X; the remaining S sends one-way arcs to the
    remaining W.  Strongly connected for every valid (a, k).
    """
    if k < 1 or 2 * k >= a:
        raise ValueError(f"need 1 <= k < a/2, got a={a}, k={k}")
    arcs = set()
    for r in range(k):
        for y in range(a, 2 * a):
            arcs.add((r, y))
            arcs.add((y, r))
    for u in range(a, a + k):
        for x in range(a):
            arcs.add((u, x))
            arcs.add((x, u))
    for s in range(k, a):
        for w in range(a + k, 2 * a):
            arcs.add((s, w))
    return new_digraph(a, sorted(arcs))


def gen_Tak(a: int, k: int) -> BipartiteDigraph:
    """Non-hamiltonian bipartite tournament: every cross pair carries
    exactly one arc, oriented R -> U -> S -> W -> R block-cyclically."""
    if k < 1 or 2 * k >= a:
        raise ValueError(f"need 1 <= k < a/2, got a={a}, k={k}")
    arcs = []
    for r in range(k):
        for u in range(a, a + k):
            arcs.append((r, u))
    for u in range(a, a + k):
        for s in range(k, a):
            arcs.append((u, s))
    for s in range(k, a):
        for w in range(a + k, 2 * a):
            arcs.append((s, w))
    for w in range(a + k, 2 * a):
        for r in range(k):
            arcs.append((w, r))
    return new_digraph(a, arcs)


# ---------------------------------------------------------------------------
# random instances that keep the pair-degree condition


def _random_m_run(a: int, seed: int, budget: int | None,
                  ) -> tuple[BipartiteDigraph, tuple[tuple[int, int], ...]]:
    rng = random.Random(seed)
    n = 2 * a
    bound = 3 * a + 1
    out = [0] * n
    for x in range(a):
        for y in range(a, n):
            out[x] |= 1 << y
            out[y] |= 1 << x
    deg = [n] * n  # complete: a out + a in each

    def deletable(u: int, v: int) -> bool:
        du, dv = deg[u] - 1, deg[v] - 1
        if not out[v] >> u & 1 and du + dv < bound:
            return False
        for w in range(n):
            if w == u or w == v:
                continue
            if not (out[u] >> w | out[w] >> u) & 1 and du + deg[w] < bound:
                return False
            if not (out[v] >> w | out[w] >> v) & 1 and dv + deg[w] < bound:
                return False
        return True

    log: list[tuple[int, int]] = []
    while budget is None or len(log) < budget:
        arcs = [(u, w) for u in range(n) for w in range(n) if out[u] >> w & 1]
        rng.shuffle(arcs)
        for u, v in arcs:
            if deletable(u, v):
                out[u] &= ~(1 << v)
                deg[u] -= 1
                deg[v] -= 1
                log.append((u, v))
                break
        else:
            break
    return BipartiteDigraph(a, tuple(out)), tuple(log)


def gen_random_M(a: int, seed: int, budget: int | None = None) -> BipartiteDigraph:
    """Random digraph satisfying the pair-degree condition, by thinning.

    Starts complete and deletes uniformly chosen arcs whose removal keeps
    the condition, up to budget deletions (None: until no arc can go).
    Deterministic for a fixed (a, seed, budget).
    """
    return _random_m_run(a, seed, budget)[0]


def gen_random_M_log(a: int, seed: int, budget: int | None = None,
                     ) -> tuple[BipartiteDigraph, tuple[tuple[int, int], ...]]:
    """Same as gen_random_M but also returns the deletion sequence."""
    return _random_m_run(a, seed, budget)


def gen_random(a: int, seed: int, density: float = 0.5) -> BipartiteDigraph:
    """Plain random digraph: each cross arc present independently."""
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be within [0, 1], got {density}")
    rng = random.Random(seed)
    arcs = []
    for x in range(a):
        for y in range(a, 2 * a):
            if rng.random() < density:
                arcs.append((x, y))
            if rng.random() < density:
                arcs.append((y, x))
    return new_digraph(a, arcs)


# ---------------------------------------------------------------------------
# exhaustive enumeration and canonical forms


def enumerate_all(a: int, keep: Callable[[BipartiteDigraph], bool] | None = None,
                  ) -> Iterator[BipartiteDigraph]:
    """Every digraph on classes of size a, streamed in arc-bitmask order.

    2^(2 a^2) digraphs, so a is capped at 3 (262144 instances).
    """
    if a > 3:
        raise ValueError(f"enumeration is capped at a <= 3, got {a}")
    for mask in range(1 << 2 * a * a):
        d = from_arc_bitmask(a, mask)
        if keep is None or keep(d):
            yield d


def canonical_form(d: BipartiteDigraph) -> BipartiteDigraph:
    """Least arc-bitmask representative under relabeling.

    Runs over all a! * a! class-preserving relabelings and the same number
    of class-swapping ones; capped at a <= 4.
    """
    a = d.a
    if a > 4:
        raise ValueError(f"canonical_form is capped at a <= 4, got {a}")
    idx = {arc: i for i, arc in enumerate(arc_order(a))}
    arcs = d.arcs()
    best: int | None = None
    for pi in permutations(range(a)):
        for rho in permutations(range(a)):
            keep = 0
            swap = 0
            for u, v in arcs:
                if u < a:
                    keep |= 1 << idx[(pi[u], a + rho[v - a])]
                    swap |= 1 << idx[(a + pi[u], rho[v - a])]
                else:
                    keep |= 1 << idx[(a + rho[u - a], pi[v])]
                    swap |= 1 << idx[(rho[u - a], a + pi[v])]
            cand = min(keep, swap)
            if best is None or cand < best:
                best = cand
    return from_arc_bitmask(a, 0 if best is None else best)


@lru_cache(maxsize=1)
def fig1_digraph() -> BipartiteDigraph:
    """The unique 6-vertex digraph, up to relabeling, whose semi-degrees
    all reach 2 while no hamiltonian cycle exists.

    Derived on the spot rather than hard-coded: scan every out-mask
    combination with out-degrees >= 2, keep those with in-degrees >= 2 and
    no hamiltonian cycle, and collapse to canonical forms, which must leave
    exactly one class.  Returns the canonical representative.
    """
    from .hamilton import oracle_cycle

    a = 3
    x_opts = [0b011000, 0b101000, 0b110000, 0b111000]
    y_opts = [0b011, 0b101, 0b110, 0b111]
    classes: set[int] = set()
    for masks in product(x_opts, x_opts, x_opts, y_opts, y_opts, y_opts):
        d = BipartiteDigraph(a, masks)
        if any(d.in_mask(v).bit_count() < 2 for v in range(6)):
            continue
        if oracle_cycle(d) is not None:
            continue
        classes.add(canonical_form(d).arc_bitmask())
    if len(classes) != 1:
        raise AssertionError(
            f"expected a single class of tight non-hamiltonian examples, got {len(classes)}")
    return from_arc_bitmask(a, classes.pop())
