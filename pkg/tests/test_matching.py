"""Matching search and its certificates."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biham.digraph import from_arc_bitmask, mask_of, new_digraph
from biham.generators import gen_complete
from biham.matching import (
    HallViolator,
    Matching,
    all_complete_matchings,
    check_expansion,
    find_complete_matching,
)


def test_canonical_matching_on_complete():
    d = gen_complete(3)
    m = find_complete_matching(d)
    assert isinstance(m, Matching)
    assert m.direction == "XY"
    # augmenting from ascending sources ends up pairing x_i with y_{a-1-i}
    assert m.pairs == ((0, 5), (1, 4), (2, 3))
    assert m.validate(d)
    assert m.image(1) == 4 and m.preimage(4) == 1
    assert m.as_dict() == {0: 5, 1: 4, 2: 3}


def test_matching_direction_yx():
    d = gen_complete(2)
    m = find_complete_matching(d, "YX")
    assert isinstance(m, Matching)
    assert m.pairs == ((2, 1), (3, 0))
    assert m.validate(d)
    with pytest.raises(ValueError):
        find_complete_matching(d, "sideways")


def test_hall_violator_when_starved():
    # both x vertices feed only y0
    d = new_digraph(2, [(0, 2), (1, 2)])
    v = find_complete_matching(d)
    assert isinstance(v, HallViolator)
    assert v.s_mask == 0b0011 and v.n_mask == 0b0100
    assert v.validate(d)
    assert not HallViolator(v.s_mask, 0b1000).validate(d)


def test_matching_validate_rejects_non_arcs():
    d = new_digraph(2, [(0, 2), (1, 3)])
    assert Matching("XY", ((0, 2), (1, 3))).validate(d)
    assert not Matching("XY", ((0, 3), (1, 2))).validate(d)
    assert not Matching("XY", ((0, 2), (0, 2))).validate(d)
    assert not Matching("YX", ((0, 2), (1, 3))).validate(d)


def test_expansion_holds_on_complete():
    rep = check_expansion(gen_complete(4))
    assert rep.holds and rep.s_mask is None


def test_expansion_finds_smallest_first_violation():
    d = new_digraph(3, [(0, 3), (1, 3), (2, 4), (2, 5), (3, 0), (4, 1), (5, 2)])
    rep = check_expansion(d)
    assert not rep.holds
    assert rep.s_mask == mask_of([0, 1])
    assert rep.n_mask == mask_of([3])


def test_all_complete_matchings_complete_a3():
    ms = all_complete_matchings(gen_complete(3))
    assert len(ms) == 6
    assert len(set(m.pairs for m in ms)) == 6
    d = gen_complete(3)
    assert all(m.validate(d) for m in ms)


def test_all_complete_matchings_empty_when_starved():
    assert all_complete_matchings(new_digraph(2, [(0, 2), (1, 2)])) == []


digraphs = st.integers(2, 4).flatmap(
    lambda a: st.tuples(st.just(a), st.integers(0, (1 << 2 * a * a) - 1)))


@settings(max_examples=200, deadline=None)
@given(digraphs)
def test_matching_search_dichotomy(aw):
    """Either outcome must validate against the digraph it came from."""
    a, mask = aw
    d = from_arc_bitmask(a, mask)
    for direction in ("XY", "YX"):
        res = find_complete_matching(d, direction)
        assert res.validate(d)
        if isinstance(res, Matching):
            assert res.direction == direction


@settings(max_examples=100, deadline=None)
@given(digraphs)
def test_violator_implies_no_matching_anywhere(aw):
    a, mask = aw
    d = from_arc_bitmask(a, mask)
    res = find_complete_matching(d)
    if isinstance(res, HallViolator):
        assert all_complete_matchings(d) == []
    else:
        assert res.pairs in {m.pairs for m in all_complete_matchings(d)}
