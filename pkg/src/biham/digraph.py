"""Balanced bipartite digraphs with bitmask adjacency.

Vertices are dense integer ids 0..2a-1.  Ids 0..a-1 form class X, ids
a..2a-1 form class Y, and every arc crosses between the classes.  Adjacency
is kept as one out-mask and one in-mask per vertex, so degree and
neighborhood queries are popcounts and ORs.  Instances are immutable after
construction; everything downstream shares them freely.

File formats (text and a JSON mirror) use labels x0..x{a-1}, y0..y{a-1}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_A = 32  # exact machinery assumes 2a <= 64 bit masks


class DigraphError(ValueError):
    """Invalid construction parameters (bad a, bad arc, duplicate arc)."""


class ParseError(ValueError):
    """Malformed digraph file; message carries the offending line number."""


@dataclass(frozen=True)
class DegreeProfile:
    out: int
    in_: int

    @property
    def total(self) -> int:
        return self.out + self.in_


class BipartiteDigraph:
    """Immutable balanced bipartite digraph on 2a vertices."""

    __slots__ = ("a", "n", "_out", "_in", "_hash")

    def __init__(self, a: int, out_masks: tuple[int, ...]):
        # Internal constructor: trusts its input. Use new_digraph() to build
        # from an arc list with validation.
        self.a = a
        self.n = 2 * a
        self._out = out_masks
        in_masks = [0] * self.n
        for u in range(self.n):
            m = out_masks[u]
            while m:
                v = (m & -m).bit_length() - 1
                in_masks[v] |= 1 << u
                m &= m - 1
        self._in = tuple(in_masks)
        self._hash = hash((a, out_masks))

    # -- basic queries -----------------------------------------------------

    @property
    def x_mask(self) -> int:
        return (1 << self.a) - 1

    @property
    def y_mask(self) -> int:
        return ((1 << self.a) - 1) << self.a

    @property
    def v_mask(self) -> int:
        return (1 << self.n) - 1

    def out_mask(self, u: int) -> int:
        return self._out[u]

    def in_mask(self, u: int) -> int:
        return self._in[u]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self._out[u] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        """All arcs sorted by (src, dst)."""
        out = []
        for u in range(self.n):
            m = self._out[u]
            while m:
                v = (m & -m).bit_length() - 1
                out.append((u, v))
                m &= m - 1
        return out

    @property
    def arc_count(self) -> int:
        return sum(m.bit_count() for m in self._out)

    def arc_bitmask(self) -> int:
        """Pack the arc set into one integer, bit i = arc_order(a)[i]."""
        mask = 0
        for i, (u, v) in enumerate(arc_order(self.a)):
            if self._out[u] >> v & 1:
                mask |= 1 << i
        return mask

    def is_x(self, v: int) -> bool:
        return v < self.a

    def class_of(self, v: int) -> str:
        return "X" if v < self.a else "Y"

    def label(self, v: int) -> str:
        return vertex_label(v, self.a)

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BipartiteDigraph)
            and self.a == other.a
            and self._out == other._out
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"BipartiteDigraph(a={self.a}, arcs={self.arc_count})"


# ---------------------------------------------------------------------------
# construction and vertex-set helpers


def new_digraph(a: int, arcs: Iterable[tuple[int, int]]) -> BipartiteDigraph:
    """Build a digraph from an ordered-pair arc list, validating everything.

    Rejects a < 2 (the degree conditions need it), out-of-range ids,
    same-class arcs and duplicates, naming the offending pair.
    """
    if a < 2:
        raise DigraphError(f"class size a must be >= 2, got {a}")
    if a > MAX_A:
        raise DigraphError(f"class size a must be <= {MAX_A}, got {a}")
    n = 2 * a
    out_masks = [0] * n
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphError(f"arc ({u}, {v}) out of range for a={a}")
        if (u < a) == (v < a):
            raise DigraphError(f"arc ({u}, {v}) stays inside one class")
        if out_masks[u] >> v & 1:
            raise DigraphError(f"duplicate arc ({u}, {v})")
        out_masks[u] |= 1 << v
    return BipartiteDigraph(a, tuple(out_masks))


def from_arc_bitmask(a: int, mask: int) -> BipartiteDigraph:
    """Inverse of BipartiteDigraph.arc_bitmask for enumeration loops."""
    order = arc_order(a)
    out_masks = [0] * (2 * a)
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        u, v = order[i]
        out_masks[u] |= 1 << v
        m &= m - 1
    return BipartiteDigraph(a, tuple(out_masks))


_ARC_ORDER_CACHE: dict[int, tuple[tuple[int, int], ...]] = {}


def arc_order(a: int) -> tuple[tuple[int, int], ...]:
    """Fixed enumeration order of the 2a^2 possible arcs: (src, dst) lex."""
    cached = _ARC_ORDER_CACHE.get(a)
    if cached is None:
        pairs = [(u, v) for u in range(a) for v in range(a, 2 * a)]
        pairs += [(u, v) for u in range(a, 2 * a) for v in range(a)]
        cached = _ARC_ORDER_CACHE[a] = tuple(pairs)
    return cached


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for v in ids:
        m |= 1 << v
    return m


def ids_of(mask: int) -> list[int]:
    out = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        out.append(v)
        mask &= mask - 1
    return out


def as_mask(s: int | Iterable[int]) -> int:
    return s if isinstance(s, int) else mask_of(s)


# ---------------------------------------------------------------------------
# degree / neighborhood / induced / connectivity


def degree(d: BipartiteDigraph, v: int, s: int | Iterable[int] | None = None) -> DegreeProfile:
    """Degree of v relative to the vertex set s (defaults to all of V)."""
    if not 0 <= v < d.n:
        raise DigraphError(f"vertex {v} out of range for a={d.a}")
    m = d.v_mask if s is None else as_mask(s)
    return DegreeProfile((d.out_mask(v) & m).bit_count(), (d.in_mask(v) & m).bit_count())


def neighborhood(d: BipartiteDigraph, t: int | Iterable[int], direction: str = "out") -> int:
    """N+(T) or N-(T) over all of V, as a bitmask."""
    if direction not in ("out", "in"):
        raise DigraphError(f"direction must be 'out' or 'in', got {direction!r}")
    masks = d._out if direction == "out" else d._in
    acc = 0
    t = as_mask(t)
    while t:
        v = (t & -t).bit_length() - 1
        acc |= masks[v]
        t &= t - 1
    return acc


class InducedSubdigraph:
    """View of D restricted to a vertex set, with the original-id map kept.

    The view need not be balanced, so it is not a BipartiteDigraph; it
    exposes per-class sizes and converts to one via to_balanced() when the
    classes happen to have equal size.  Local ids are 0..nx-1 for the X side
    and nx..nx+ny-1 for the Y side, both in ascending original-id order.
    """

    __slots__ = ("nx", "ny", "original_ids", "out_masks")

    def __init__(self, d: BipartiteDigraph, s: int):
        xs = [v for v in ids_of(s & d.x_mask)]
        ys = [v for v in ids_of(s & d.y_mask)]
        self.nx = len(xs)
        self.ny = len(ys)
        self.original_ids = tuple(xs + ys)
        local = {orig: i for i, orig in enumerate(self.original_ids)}
        masks = []
        for orig in self.original_ids:
            m = d.out_mask(orig) & s
            lm = 0
            while m:
                w = (m & -m).bit_length() - 1
                lm |= 1 << local[w]
                m &= m - 1
            masks.append(lm)
        self.out_masks = tuple(masks)

    @property
    def balanced(self) -> bool:
        return self.nx == self.ny

    def to_balanced(self) -> tuple[BipartiteDigraph, tuple[int, ...]]:
        """Relabel into a BipartiteDigraph; also returns original ids by local id."""
        if not self.balanced:
            raise DigraphError(f"induced view is not balanced ({self.nx} vs {self.ny})")
        if self.nx < 2:
            raise DigraphError("induced view too small for a BipartiteDigraph")
        return BipartiteDigraph(self.nx, self.out_masks), self.original_ids


def induced(d: BipartiteDigraph, s: int | Iterable[int]) -> InducedSubdigraph:
    return InducedSubdigraph(d, as_mask(s) & d.v_mask)


def _reach(masks: tuple[int, ...], start: int, n: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            nxt |= masks[v]
            frontier &= frontier - 1
        frontier = nxt & ~seen
        seen |= nxt
    return seen

def is_strongly_connected(d: BipartiteDigraph) -> bool:
    """True iff every ordered vertex pair is joined by a directed path."""
    full = d.v_mask
    return _reach(d._out, 0, d.n) == full and _reach(d._in, 0, d.n) == full


# ---------------------------------------------------------------------------
# labels and serialization


def vertex_label(v: int, a: int) -> str:
    return f"x{v}" if v < a else f"y{v - a}"


def vertex_id(label: str, a: int) -> int:
    if len(label) >= 2 and label[0] in "xy" and label[1:].isdigit():
        i = int(label[1:])
        if 0 <= i < a:
            return i if label[0] == "x" else a + i
    raise ParseError(f"bad vertex label {label!r} for a={a}")


def dumps_text(d: BipartiteDigraph) -> str:
    lines = [f"a {d.a}"]
    for u, v in d.arcs():
        lines.append(f"{d.label(u)} {d.label(v)}")
    return "\n".join(lines) + "\n"


def loads_text(text: str) -> BipartiteDigraph:
    """Parse the text format: `a <int>` header, then `<src> <dst>` arc lines.

    `#` starts a comment, blank lines are skipped, arcs must be unique.
    Errors carry 1-based line numbers.
    """
    a = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if a is None:
            if len(parts) != 2 or parts[0] != "a":
                raise ParseError(f"line {lineno}: expected header 'a <int>', got {raw!r}")
            try:
                a = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad class size {parts[1]!r}") from None
            if a < 2 or a > MAX_A:
                raise ParseError(f"line {lineno}: class size {a} out of range 2..{MAX_A}")
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<src> <dst>', got {raw!r}")
        try:
            u, v = vertex_id(parts[0], a), vertex_id(parts[1], a)
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
        if (u < a) == (v < a):
            raise ParseError(f"line {lineno}: arc {parts[0]} {parts[1]} stays inside one class")
        if (u, v) in seen:
            raise ParseError(f"line {lineno}: duplicate arc {parts[0]} {parts[1]}")
        seen.add((u, v))
        arcs.append((u, v))
    if a is None:
        raise ParseError("line 1: missing 'a <int>' header")
    return new_digraph(a, arcs)


def dumps_json(d: BipartiteDigraph) -> str:
    payload = {"a": d.a, "arcs": [[d.label(u), d.label(v)] for u, v in d.arcs()]}
    return json.dumps(payload, separators=(",", ":")) + "\n"


def loads_json(text: str) -> BipartiteDigraph:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}: invalid JSON: {e.msg}") from None
    if not isinstance(payload, dict) or "a" not in payload or "arcs" not in payload:
        raise ParseError("line 1: JSON digraph needs fields 'a' and 'arcs'")
    a = payload["a"]
    if not isinstance(a, int) or a < 2 or a > MAX_A:
        raise ParseError(f"line 1: class size {a!r} out of range 2..{MAX_A}")
    arcs = []
    for entry in payload["arcs"]:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise ParseError(f"line 1: bad arc entry {entry!r}")
        arcs.append((vertex_id(str(entry[0]), a), vertex_id(str(entry[1]), a)))
    try:
        return new_digraph(a, arcs)
    except DigraphError as e:
        raise ParseError(f"line 1: {e}") from None


def loads_auto(text: str) -> BipartiteDigraph:
    """Sniff text vs JSON by the first non-space byte."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return loads_json(text)
    return loads_text(text)


def iter_vertices(mask: int) -> Iterator[int]:
    while mask:
        v = (mask & -mask).bit_length() - 1
        yield v
        mask &= mask - 1
