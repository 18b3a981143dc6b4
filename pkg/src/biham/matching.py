"""Complete matchings via augmenting paths, with Hall-violator certificates.

A complete matching here is a bijection between the classes realized by
arcs, always stated with an explicit direction (X->Y or Y->X).  When no
complete matching exists the search produces a Hall violator: a set S on
the source side whose out-neighborhood is smaller than S.  Both outcomes
carry enough data to be re-validated independently of the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .digraph import BipartiteDigraph, ids_of, mask_of, neighborhood


@dataclass(frozen=True)
class Matching:
    """Complete matching; pairs are (src, dst) arcs in the stated direction."""

    direction: str  # "XY" or "YX"
    pairs: tuple[tuple[int, int], ...]

    def image(self, src: int) -> int:
        for s, t in self.pairs:
            if s == src:
                return t
        raise KeyError(src)

    def preimage(self, dst: int) -> int:
        for s, t in self.pairs:
            if t == dst:
                return s
        raise KeyError(dst)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def validate(self, d: BipartiteDigraph) -> bool:
        """Every pair is an arc, sources cover one class, targets the other."""
        if len(self.pairs) != d.a:
            return False
        srcs = {s for s, _ in self.pairs}
        dsts = {t for _, t in self.pairs}
        if len(srcs) != d.a or len(dsts) != d.a:
            return False
        if self.direction == "XY":
            side_ok = all(s < d.a <= t for s, t in self.pairs)
        else:
            side_ok = all(t < d.a <= s for s, t in self.pairs)
        return side_ok and all(d.has_arc(s, t) for s, t in self.pairs)


@dataclass(frozen=True)
class HallViolator:
    """Set S on the source side with |N+(S)| < |S|."""

    s_mask: int
    n_mask: int

    def validate(self, d: BipartiteDigraph) -> bool:
        return (
            neighborhood(d, self.s_mask, "out") == self.n_mask
            and self.n_mask.bit_count() < self.s_mask.bit_count()
        )


def find_complete_matching(d: BipartiteDigraph, direction: str = "XY") -> Matching | HallViolator:
    """Augmenting-path search, scanning source vertices in ascending id order.

    Deterministic by construction: neighbors are tried low id first, so the
    result is the canonical matching used throughout the cycle machinery.
    """
    if direction not in ("XY", "YX"):
        raise ValueError(f"direction must be 'XY' or 'YX', got {direction!r}")
    a = d.a
    if direction == "XY":
        sources = range(a)
        target_of = lambda u: d.out_mask(u) & d.y_mask
    else:
        sources = range(a, 2 * a)
        target_of = lambda u: d.out_mask(u) & d.x_mask

    match: dict[int, int] = {}  # target -> source

    def augment(src: int, visited: set[int]) -> bool:
        m = target_of(src)
        while m:
            t = (m & -m).bit_length() - 1
            m &= m - 1
            if t in visited:
                continue
            visited.add(t)
            if t not in match or augment(match[t], visited):
                match[t] = src
                return True
        return False

    for src in sources:
        visited: set[int] = set()
        if not augment(src, visited):
            # Alternating tree rooted at src: S = {src} + sources matched to
            # the visited targets, N+(S) = visited.  |N| = |S| - 1.
            s_ids = [src] + [match[t] for t in visited]
            return HallViolator(mask_of(s_ids), mask_of(visited))
    pairs = tuple(sorted((s, t) for t, s in match.items()))
    return Matching(direction, pairs)


@dataclass(frozen=True)
class ExpansionReport:
    """First neighborhood-expansion violation, if any, among small sets."""

    holds: bool
    s_mask: int | None = None
    n_mask: int | None = None


def check_expansion(d: BipartiteDigraph) -> ExpansionReport:
    """Check |N+(S)| >= |S| for every one-class S with |S| <= (a+1)/2.

    Exhaustive over subsets up to the size bound, X class first, sizes
    ascending, members in combination order; returns the first violation.
    """
    a = d.a
    limit = (a + 1) // 2
    for lo in (0, a):
        vertices = range(lo, lo + a)
        for size in range(1, limit + 1):
            for combo in combinations(vertices, size):
                s = mask_of(combo)
                n = neighborhood(d, s, "out")
                if n.bit_count() < size:
                    return ExpansionReport(False, s, n)
    return ExpansionReport(True)


def all_complete_matchings(d: BipartiteDigraph) -> list[Matching]:
    """Every complete X->Y matching, by backtracking in ascending x order.

    Factorial in the worst case; callers keep a small (the decomposition
    stage search caps itself before calling this).
    """
    a = d.a
    out: list[Matching] = []
    pairs: list[tuple[int, int]] = []

    def rec(x: int, used: int) -> None:
        if x == a:
            out.append(Matching("XY", tuple(pairs)))
            return
        m = d.out_mask(x) & d.y_mask & ~used
        while m:
            y = (m & -m).bit_length() - 1
            m &= m - 1
            pairs.append((x, y))
            rec(x + 1, used | 1 << y)
            pairs.pop()

    rec(0, 0)
    return out
