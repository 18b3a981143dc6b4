"""Hamiltonian cycles in balanced bipartite digraphs, by construction.

The constructor works in two phases.  decompose() covers the vertex set
with matching-compatible cycles of non-increasing length, plus at most one
matched pair left over.  find_bridge_path() then looks for a short path
that leaves one cycle, runs through the later components, and returns, and
splice() grafts it in, enlarging that cycle; whatever the graft did not
absorb is decomposed again.  Each merge strictly enlarges one cycle and
never touches the cycles before it, so the loop terminates.

When the structure runs out (possible once the degree conditions fail) the
driver falls back to oracle_cycle, an exhaustive search with a hard size
cap.  Everything user-facing returns certificates that re-validate against
the digraph alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import (
    BipartiteDigraph,
    ids_of,
    induced,
    is_strongly_connected,
    mask_of,
)
from .matching import HallViolator, Matching, find_complete_matching
from .compat import (
    CapExceeded,
    ContractedDigraph,
    CycleCertificate,
    contract,
    longest_compatible_cycle,
)

ORACLE_CAP = 24  # vertices; the exhaustive search refuses anything larger


class DecompositionError(Exception):
    """A remainder admits no complete matching or no compatible cycle.

    scope_mask is the vertex set of the offending remainder.  violator,
    when present, is a Hall violator in global ids; validate it against the
    subdigraph induced by scope_mask.
    """

    def __init__(self, message: str, scope_mask: int,
                 violator: HallViolator | None = None):
        super().__init__(message)
        self.scope_mask = scope_mask
        self.violator = violator


@dataclass(frozen=True)
class Decomposition:
    """Disjoint compatible cycles plus at most one matched pair, covering D."""

    cycles: tuple[CycleCertificate, ...]
    leftover: tuple[int, ...]  # () or (x, y) with x matched to y
    matching: Matching

    @property
    def component_count(self) -> int:
        return len(self.cycles) + (1 if self.leftover else 0)

    def validate(self, d: BipartiteDigraph) -> bool:
        """Disjointness, coverage, per-cycle validity, and the stage bounds:
        lengths never increase and each cycle holds at least half of what
        was left when it was cut."""
        if not self.matching.validate(d):
            return False
        seen = 0
        for cert in self.cycles:
            if not cert.validate(d, self.matching):
                return False
            cm = mask_of(cert.vertices)
            if cm & seen:
                return False
            seen |= cm
        if self.leftover:
            if len(self.leftover) != 2:
                return False
            x, y = self.leftover
            if not d.is_x(x) or d.is_x(y) or self.matching.as_dict().get(x) != y:
                return False
            lm = mask_of(self.leftover)
            if lm & seen:
                return False
            seen |= lm
        if seen != d.v_mask:
            return False
        lens = [c.length for c in self.cycles]
        if any(lens[i] < lens[i + 1] for i in range(len(lens) - 1)):
            return False
        rem = d.a
        for cert in self.cycles:
            if cert.length < rem:  # 2 c_j >= a_j
                return False
            rem -= cert.length // 2
        return 2 * rem == len(self.leftover)


@dataclass(frozen=True)
class MergePlan:
    """How to graft a bridge into one cycle of a decomposition.

    kinds: "insert" splices path between y at position i0 and x at position
    j0 = i0+1; "double_chord" additionally reorders the target cycle using
    two chord arcs around position s; "rematch" inserts a matched pair in
    reverse orientation between x and y at position j0, swapping two
    matching pairs.  Positions index matched pairs along the target cycle
    as stored (vertices 2i and 2i+1).
    """

    target: int
    kind: str
    path: tuple[int, ...]
    i0: int
    j0: int
    s: int = -1
    new_arcs: tuple[tuple[int, int], ...] = ()
    drop_arcs: tuple[tuple[int, int], ...] = ()
    rematch_drop: tuple[tuple[int, int], ...] = ()
    rematch_add: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class BridgeTerminal:
    """No bridge exists for any target: the merge phase is stuck.

    missing lists the absent connecting arcs between the reported target
    component and everything after it, (tail, head) per absent arc.
    """

    target: int
    missing: tuple[tuple[int, int], ...]
    note: str


@dataclass(frozen=True)
class HamiltonResult:
    hamiltonian: bool | None  # None: undecided (constructor stuck, oracle over cap)
    certificate: CycleCertificate | None
    matching: Matching | None
    decomposition: Decomposition | None
    method: str  # "construct" | "oracle" | "none"
    merges: int = 0
    terminal: BridgeTerminal | None = None
    note: str = ""


# ---------------------------------------------------------------------------
# phase one: decomposition


def _lift(mask: int, orig: tuple[int, ...]) -> int:
    out = 0
    for i in ids_of(mask):
        out |= 1 << orig[i]
    return out


def _pairswap_search(db: BipartiteDigraph, m0: Matching, best_len: int,
                     mode: str) -> list[int] | None:
    """First-improving walk through pair swaps of the matching.

    A swap trades the images of two x's when both crossed arcs exist; it is
    kept only if the longest compatible cycle strictly improves.
    """
    a = db.a
    y_of = [0] * a
    for x, y in m0.pairs:
        y_of[x] = y
    best_cycle: list[int] | None = None
    accepted = 0
    improved = True
    while improved and accepted < 4 * a * a:
        improved = False
        for i in range(a):
            for j in range(i + 1, a):
                if not (db.has_arc(i, y_of[j]) and db.has_arc(j, y_of[i])):
                    continue
                y_of[i], y_of[j] = y_of[j], y_of[i]
                m1 = Matching("XY", tuple((x, y_of[x]) for x in range(a)))
                cert = longest_compatible_cycle(db, m1, mode)
                if cert is not None and cert.length > best_len:
                    best_len = cert.length
                    best_cycle = list(cert.vertices)
                    accepted += 1
                    improved = True
                    if best_len == db.n:
                        return best_cycle
                    break
                y_of[i], y_of[j] = y_of[j], y_of[i]
            if improved:
                break
    return best_cycle


def _complement_matchable(db: BipartiteDigraph, used: int,
                          cache: dict[int, bool]) -> bool:
    got = cache.get(used)
    if got is not None:
        return got
    rest = ((1 << db.n) - 1) & ~used
    xs = [v for v in ids_of(rest) if v < db.a]
    ys = [v for v in ids_of(rest) if v >= db.a]
    if len(xs) != len(ys):
        ok = False
    elif not xs:
        ok = True
    elif len(xs) == 1:
        ok = db.has_arc(xs[0], ys[0])
    else:
        sub, _ = induced(db, rest).to_balanced()
        ok = isinstance(find_complete_matching(sub), Matching)
    cache[used] = ok
    return ok


def _direct_max_cycle(db: BipartiteDigraph) -> list[int] | None:
    """Longest directed cycle whose complement keeps a complete matching.

    Subset reachability DP per start vertex, each cycle rooted at its
    smallest x.  Exponential in db.n; callers cap at 16 vertices.
    """
    n = db.n
    full = (1 << n) - 1
    best: list[int] | None = None
    feas_cache: dict[int, bool] = {}
    for x0 in range(db.a):
        if best is not None and len(best) >= n - x0:
            break
        allowed = full & ~((1 << x0) - 1 & (1 << db.a) - 1)  # drop x ids below x0
        states: dict[int, int] = {1 << x0: 1 << x0}  # mask -> bitmask of lasts
        frontier = [(1 << x0, x0)]
        while frontier:
            mask, last = frontier.pop()
            m = db.out_mask(last) & allowed & ~mask
            while m:
                w = (m & -m).bit_length() - 1
                m &= m - 1
                nm = mask | 1 << w
                lasts = states.get(nm, 0)
                if not lasts >> w & 1:
                    states[nm] = lasts | 1 << w
                    frontier.append((nm, w))
        closers = db.in_mask(x0)
        cands = []
        for mask, lasts in states.items():
            k = mask.bit_count()
            if k < 4 or (best is not None and k <= len(best)):
                continue
            m = lasts & closers
            while m:
                last = (m & -m).bit_length() - 1
                m &= m - 1
                cands.append((-k, mask, last))
        cands.sort()
        for negk, mask, last in cands:
            if best is not None and -negk <= len(best):
                break
            if not _complement_matchable(db, mask, feas_cache):
                continue
            seq = [last]
            cur_mask, cur = mask, last
            while (cur_mask, cur) != (1 << x0, x0):
                pm = cur_mask & ~(1 << cur)
                p = -1
                m = db.in_mask(cur) & pm
                while m:
                    c = (m & -m).bit_length() - 1
                    m &= m - 1
                    if states.get(pm, 0) >> c & 1:
                        p = c
                        break
                seq.append(p)
                cur_mask, cur = pm, p
            seq.reverse()
            best = seq
            break
        if best is not None and len(best) == n:
            break
    return best


def _stage_cycle(db: BipartiteDigraph, mode: str) -> list[int] | HallViolator | None:
    """Longest cycle this stage will cut from the (local) remainder.

    Ladder: exact or heuristic longest cycle on the canonical matching;
    if that stays under half the remainder, a pair-swap walk through
    neighbouring matchings; if still under and the remainder is small, the
    exact search over all matchings at once.
    """
    m0 = find_complete_matching(db)
    if isinstance(m0, HallViolator):
        return m0
    cert = longest_compatible_cycle(db, m0, mode)
    best = list(cert.vertices) if cert is not None else None
    if best is not None and len(best) == db.n:
        return best
    aj = db.a
    if best is None or len(best) < aj:
        swapped = _pairswap_search(db, m0, 0 if best is None else len(best), mode)
        if swapped is not None and (best is None or len(swapped) > len(best)):
            best = swapped
    if (best is None or len(best) < aj) and db.n <= 16:
        direct = _direct_max_cycle(db)
        if direct is not None and (best is None or len(direct) > len(best)):
            best = direct
    return best


def _decompose_mask(d: BipartiteDigraph, mask: int, mode: str,
                    ) -> tuple[list[CycleCertificate], tuple[int, ...]]:
    remaining = mask
    cycles: list[CycleCertificate] = []
    leftover: tuple[int, ...] = ()
    while remaining:
        if remaining.bit_count() == 2:
            x, y = ids_of(remaining)
            if not d.is_x(x) or d.is_x(y):
                raise AssertionError("remainder lost its balance")
            if not d.has_arc(x, y):
                raise DecompositionError(
                    f"pair {d.label(x)}, {d.label(y)} left with no arc between them",
                    remaining, HallViolator(1 << x, 0))
            leftover = (x, y)
            break
        sub = induced(d, remaining)
        if not sub.balanced:
            raise AssertionError("remainder lost its balance")
        db, orig = sub.to_balanced()
        got = _stage_cycle(db, mode)
        if isinstance(got, HallViolator):
            raise DecompositionError(
                "remainder admits no complete matching", remaining,
                HallViolator(_lift(got.s_mask, orig), _lift(got.n_mask, orig)))
        if got is None:
            raise DecompositionError(
                "remainder admits no compatible cycle", remaining)
        gcycle = [orig[v] for v in got]
        k = gcycle.index(min(gcycle))
        gcycle = gcycle[k:] + gcycle[:k]
        cycles.append(CycleCertificate(tuple(gcycle),
                                       tuple(v < d.a for v in gcycle)))
        remaining &= ~mask_of(gcycle)
    return cycles, leftover


def _assemble(d: BipartiteDigraph, cycles: list[CycleCertificate],
              leftover: tuple[int, ...]) -> Decomposition:
    pairs: list[tuple[int, int]] = []
    for cert in cycles:
        pairs.extend(cert.matched_pairs())
    if leftover:
        pairs.append((leftover[0], leftover[1]))
    m = Matching("XY", tuple(sorted(pairs)))
    if not m.validate(d):
        raise AssertionError("assembled stage matchings do not tile the classes")
    return Decomposition(tuple(cycles), leftover, m)


def decompose(d: BipartiteDigraph, mode: str = "exact") -> Decomposition:
    """Cover D by compatible cycles of non-increasing length plus at most
    one matched pair, cutting the longest cycle the stage search finds at
    every step.

    Raises DecompositionError when some remainder has no complete matching
    (a Hall violator comes attached) or no compatible cycle at all.
    """
    if mode not in ("exact", "heuristic"):
        raise ValueError(f"mode must be 'exact' or 'heuristic', got {mode!r}")
    cycles, leftover = _decompose_mask(d, d.v_mask, mode)
    return _assemble(d, cycles, leftover)


# ---------------------------------------------------------------------------
# phase two: bridges and splices


def _plan_generic(d: BipartiteDigraph, dec: Decomposition, cont: ContractedDigraph,
                  t: int, seq: tuple[int, ...]) -> MergePlan | None:
    """Try to splice the expanded bridge interior seq into cycle t."""
    cyc = dec.cycles[t].vertices
    c = len(cyc) // 2
    xs = cyc[0::2]
    ys = cyc[1::2]
    n1, nt = seq[0], seq[-1]
    anchors_in = [i for i in range(c) if cont.has_arc(xs[i], n1)]
    anchors_out = [j for j in range(c) if cont.has_arc(nt, xs[j])]
    if not anchors_in or not anchors_out:
        return None
    path: list[int] = []
    for p in seq:
        path.extend((p, cont.y_of[p]))
    inner = tuple(zip(path, path[1:]))

    for mu, i0, j0 in sorted(((j - i - 1) % c, i, j)
                             for i in anchors_in for j in anchors_out):
        if mu == 0:
            new_arcs = ((ys[i0], path[0]),) + inner + ((path[-1], xs[j0]),)
            return MergePlan(t, "insert", tuple(path), i0, j0, -1,
                             new_arcs, ((ys[i0], xs[j0]),))
        if i0 == j0:
            continue
        for k in range((i0 - j0) % c):
            s = (j0 + k) % c
            ch1 = (ys[s], xs[(i0 + 1) % c])
            ch2 = (ys[(j0 - 1) % c], xs[(s + 1) % c])
            if d.has_arc(*ch1) and d.has_arc(*ch2):
                new_arcs = ((ys[i0], path[0]),) + inner + ((path[-1], xs[j0]), ch1, ch2)
                drops = ((ys[i0], xs[(i0 + 1) % c]),
                         (ys[(j0 - 1) % c], xs[j0]),
                         (ys[s], xs[(s + 1) % c]))
                return MergePlan(t, "double_chord", tuple(path), i0, j0, s,
                                 new_arcs, drops)
    return None


def _plan_pair_insert(d: BipartiteDigraph, dec: Decomposition, t: int,
                      ) -> MergePlan | None:
    """Absorb one matched pair from a later component into cycle t.

    Forward orientation keeps the matching; the reverse orientation needs
    the pair's arc backwards and trades two matching pairs.
    """
    cyc = dec.cycles[t].vertices
    c = len(cyc) // 2
    xs = cyc[0::2]
    ys = cyc[1::2]
    donors: list[tuple[int, int]] = []
    for ci in range(t + 1, len(dec.cycles)):
        donors.extend(dec.cycles[ci].matched_pairs())
    if dec.leftover:
        donors.append((dec.leftover[0], dec.leftover[1]))
    donors.sort()
    for u2, v2 in donors:
        for i0 in range(c):
            j0 = (i0 + 1) % c
            if d.has_arc(ys[i0], u2) and d.has_arc(v2, xs[j0]):
                new_arcs = ((ys[i0], u2), (u2, v2), (v2, xs[j0]))
                return MergePlan(t, "insert", (u2, v2), i0, j0, -1,
                                 new_arcs, ((ys[i0], xs[j0]),))
        for i0 in range(c):
            i1 = (i0 + 1) % c
            if d.has_arc(xs[i1], v2) and d.has_arc(v2, u2) and d.has_arc(u2, ys[i1]):
                new_arcs = ((xs[i1], v2), (v2, u2), (u2, ys[i1]))
                return MergePlan(t, "rematch", (v2, u2), i0, i1, -1,
                                 new_arcs, ((xs[i1], ys[i1]),),
                                 rematch_drop=((xs[i1], ys[i1]), (u2, v2)),
                                 rematch_add=((xs[i1], v2), (u2, ys[i1])))
    return None


def find_bridge_path(d: BipartiteDigraph, dec: Decomposition,
                     budget: int = 200_000) -> MergePlan | BridgeTerminal:
    """Find a spliceable bridge out of some cycle through the components
    after it.

    Targets are tried from the second-to-last component downwards.  For
    each, candidate interiors are simple paths in the contraction that stay
    inside the later components and visit all of them, preferred when their
    interior cannot close into a cycle on its own, then by length, then
    lexicographically.  Falls back to absorbing a single later pair next to
    the target.  Returns a BridgeTerminal when every target is stuck.
    """
    ncomp = dec.component_count
    if ncomp <= 1:
        raise ValueError("decomposition already has a single component")
    a = d.a
    m = dec.matching
    cont = contract(d, m)
    comp = [-1] * a
    for ci, cert in enumerate(dec.cycles):
        for v in cert.vertices:
            if v < a:
                comp[v] = ci
    if dec.leftover:
        comp[dec.leftover[0]] = len(dec.cycles)

    for t in range(ncomp - 2, -1, -1):
        later_nodes = [p for p in range(a) if comp[p] > t]
        later_mask = mask_of(later_nodes)
        later_bits = 0
        for p in later_nodes:
            later_bits |= 1 << comp[p]
        cands: list[tuple[int, ...]] = []
        count = 0
        stack = [([p], 1 << p, 1 << comp[p]) for p in reversed(later_nodes)]
        while stack and count < budget:
            seq, vis, cbits = stack.pop()
            count += 1
            if cbits == later_bits:
                cands.append(tuple(seq))
            rest = cont.out_masks[seq[-1]] & later_mask & ~vis
            children = []
            while rest:
                w = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                children.append(w)
            for w in reversed(children):
                stack.append((seq + [w], vis | 1 << w, cbits | 1 << comp[w]))
        cands.sort(key=lambda s: (len(s) > 1 and cont.has_arc(s[-1], s[0]),
                                  len(s), s))
        for seq in cands:
            plan = _plan_generic(d, dec, cont, t, seq)
            if plan is not None:
                return plan
        plan = _plan_pair_insert(d, dec, t)
        if plan is not None:
            return plan

    t = ncomp - 2
    mdict = m.as_dict()
    t_xs = sorted(x for x in range(a) if comp[x] == t)
    later_xs = sorted(x for x in range(a) if comp[x] > t)
    missing = []
    for x in t_xs:
        for w in later_xs:
            if not d.has_arc(mdict[x], w):
                missing.append((mdict[x], w))
    for x in later_xs:
        for w in t_xs:
            if not d.has_arc(mdict[x], w):
                missing.append((mdict[x], w))
    note = (f"no bridge out of any component; between component {t} and the "
            f"rest, {len(missing)} connecting arcs are absent")
    return BridgeTerminal(t, tuple(missing), note)


def splice(d: BipartiteDigraph, dec: Decomposition, plan: MergePlan,
           mode: str = "exact") -> Decomposition:
    """Apply a merge plan: enlarge the target cycle, keep every earlier
    cycle, and decompose whatever the bridge did not absorb."""
    for u, v in plan.new_arcs:
        if not d.has_arc(u, v):
            raise ValueError(f"plan arc {d.label(u)} -> {d.label(v)} is not in D")
    cyc = list(dec.cycles[plan.target].vertices)
    c = len(cyc) // 2
    if plan.kind == "insert":
        at = 2 * plan.i0 + 2
        new = cyc[:at] + list(plan.path) + cyc[at:]
    elif plan.kind == "rematch":
        at = 2 * plan.j0 + 1
        new = cyc[:at] + list(plan.path) + cyc[at:]
    elif plan.kind == "double_chord":
        def seg(u: int, v: int) -> list[int]:
            out = []
            k = u
            while True:
                out.extend(cyc[2 * k:2 * k + 2])
                if k == v:
                    return out
                k = (k + 1) % c
        new = (seg((plan.s + 1) % c, plan.i0) + list(plan.path)
               + seg(plan.j0, plan.s)
               + seg((plan.i0 + 1) % c, (plan.j0 - 1) % c))
    else:
        raise ValueError(f"unknown plan kind {plan.kind!r}")
    if len(set(new)) != len(new):
        raise AssertionError("splice produced a repeated vertex")
    k = new.index(min(new))
    new = new[k:] + new[:k]
    new_cert = CycleCertificate(tuple(new), tuple(v < d.a for v in new))
    kept = list(dec.cycles[:plan.target]) + [new_cert]
    covered = 0
    for cert in kept:
        covered |= mask_of(cert.vertices)
    tail_cycles, tail_leftover = _decompose_mask(d, d.v_mask & ~covered, mode)
    return _assemble(d, kept + tail_cycles, tail_leftover)


# ---------------------------------------------------------------------------
# oracle


def oracle_cycle(d: BipartiteDigraph, cap: int = ORACLE_CAP) -> tuple[int, ...] | None:
    """Hamiltonian cycle by exhaustive search, or None; hard size cap.

    States are (visited mask, last vertex) from the fixed start 0; a state
    that fails once is never re-entered.  Quick negatives first: a vertex
    missing out- or in-arcs, then strong connectivity.
    """
    if cap > ORACLE_CAP:
        raise ValueError(f"cap above {ORACLE_CAP} vertices is not supported")
    if d.n > cap:
        raise CapExceeded(f"oracle refuses {d.n} vertices (cap {cap})")
    for v in range(d.n):
        if not d.out_mask(v) or not d.in_mask(v):
            return None
    if not is_strongly_connected(d):
        return None
    full = (1 << d.n) - 1
    failed: set[tuple[int, int]] = set()
    path = [0]

    def dfs(last: int, mask: int) -> bool:
        if mask == full:
            return d.has_arc(last, 0)
        key = (last, mask)
        if key in failed:
            return False
        rem = full & ~mask
        r = rem
        while r:
            v = (r & -r).bit_length() - 1
            r &= r - 1
            if not d.in_mask(v) & (rem | 1 << last) or not d.out_mask(v) & (rem | 1):
                failed.add(key)
                return False
        m = d.out_mask(last) & rem
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            path.append(w)
            if dfs(w, mask | 1 << w):
                return True
            path.pop()
        failed.add(key)
        return False

    if dfs(0, 1):
        return tuple(path)
    return None


def oracle_hamiltonian(d: BipartiteDigraph, cap: int = ORACLE_CAP) -> bool:
    """Exhaustive hamiltonicity verdict; raises CapExceeded above the cap."""
    return oracle_cycle(d, cap) is not None


def verify_cycle(d: BipartiteDigraph, cycle) -> bool:
    """Does the vertex sequence (or certificate) walk a hamiltonian cycle?

    Checks only against the digraph: distinct vertices, full coverage, and
    every arc present including the closing one.
    """
    seq = tuple(cycle.vertices) if isinstance(cycle, CycleCertificate) else tuple(cycle)
    if len(seq) != d.n or len(set(seq)) != d.n:
        return False
    if any(not isinstance(v, int) or not 0 <= v < d.n for v in seq):
        return False
    return all(d.has_arc(seq[i], seq[(i + 1) % d.n]) for i in range(d.n))


# ---------------------------------------------------------------------------
# driver


def _cycle_to_certificate(d: BipartiteDigraph,
                          seq: tuple[int, ...]) -> tuple[CycleCertificate, Matching]:
    k = seq.index(min(seq))
    seq = seq[k:] + seq[:k]
    pairs = tuple(sorted((seq[i], seq[(i + 1) % len(seq)])
                         for i in range(len(seq)) if seq[i] < d.a))
    m = Matching("XY", pairs)
    cert = CycleCertificate(seq, tuple(v < d.a for v in seq))
    return cert, m


def _fallback(d: BipartiteDigraph, dec: Decomposition | None,
              terminal: BridgeTerminal | None, note: str, merges: int,
              use_oracle: bool, cap: int) -> HamiltonResult:
    if use_oracle and d.n <= min(cap, ORACLE_CAP):
        seq = oracle_cycle(d, min(cap, ORACLE_CAP))
        if seq is None:
            return HamiltonResult(False, None, None, dec, "oracle", merges,
                                  terminal, note)
        cert, m = _cycle_to_certificate(d, seq)
        return HamiltonResult(True, cert, m, dec, "oracle", merges, terminal, note)
    return HamiltonResult(None, None, None, dec, "none", merges, terminal,
                          note + "; oracle out of reach at this size")


def find_hamiltonian_cycle(d: BipartiteDigraph, mode: str = "exact",
                           use_oracle: bool = True,
                           cap: int = ORACLE_CAP) -> HamiltonResult:
    """Decompose, then merge components through bridges until one cycle
    spans the digraph.

    The verdict is True with a certificate when the construction (or, after
    it gets stuck, the capped oracle) finds a hamiltonian cycle, False when
    the oracle rules one out, and None when the construction is stuck and
    the digraph is too large for the oracle.
    """
    try:
        dec = decompose(d, mode)
    except DecompositionError as e:
        return _fallback(d, None, None, f"decomposition failed: {e}", 0,
                         use_oracle, cap)
    merges = 0
    limit = 4 * d.a * d.a
    while len(dec.cycles) > 1 or dec.leftover:
        got = find_bridge_path(d, dec)
        if isinstance(got, BridgeTerminal):
            return _fallback(d, dec, got, got.note, merges, use_oracle, cap)
        try:
            dec = splice(d, dec, got, mode)
        except DecompositionError as e:
            return _fallback(d, dec, None, f"re-decomposition failed: {e}",
                             merges, use_oracle, cap)
        merges += 1
        if merges > limit:
            return _fallback(d, dec, None, "merge loop exceeded its bound",
                             merges, use_oracle, cap)
    cert = dec.cycles[0]
    return HamiltonResult(True, cert, dec.matching, dec, "construct", merges)
