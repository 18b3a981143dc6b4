"""Degree-condition checkers and their witnesses."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biham.conditions import (
    ALL_CHECKS,
    check_condition_A,
    check_condition_M,
    check_half_degrees,
    check_min_degree,
    check_woodall_bipartite,
)
from biham.digraph import degree, from_arc_bitmask, ids_of, new_digraph
from biham.generators import gen_Dprime, gen_complete, gen_random
from biham.matching import Matching, find_complete_matching

RING = new_digraph(2, [(0, 2), (2, 1), (1, 3), (3, 0)])


def test_bounds():
    for a in (2, 3, 4, 5, 6):
        d = gen_complete(a)
        assert check_condition_M(d).bound == 3 * a + 1
        assert check_min_degree(d).bound == -(-(3 * a + 1) // 2)
        assert check_half_degrees(d).bound == -(-(a + 2) // 2)
        assert check_woodall_bipartite(d).bound == a + 2
        m = find_complete_matching(d)
        assert check_condition_A(d, m).bound == 6 * a + 2


def test_complete_satisfies_everything():
    d = gen_complete(3)
    for check in ALL_CHECKS.values():
        rep = check(d)
        assert rep and rep.satisfied and rep.witness is None
    assert check_condition_A(d, find_complete_matching(d))


def test_all_checks_registry():
    assert set(ALL_CHECKS) == {"M", "min_degree", "half_degrees", "woodall"}


def test_pair_condition_witness_is_lex_first():
    rep = check_condition_M(from_arc_bitmask(2, 0))
    assert not rep
    assert rep.name == "M"
    assert rep.witness == (0, 1) and rep.witness_sum == 0

    rep = check_condition_M(RING)
    assert rep.witness == (0, 1) and rep.witness_sum == 4


def test_min_degree_witness():
    rep = check_min_degree(gen_Dprime(4))
    assert not rep
    assert rep.bound == 7
    assert rep.witness == (0,) and rep.witness_sum == 6


def test_half_degrees_witness():
    rep = check_half_degrees(RING)
    assert not rep
    assert rep.witness == (0,) and rep.witness_sum == 1


def test_woodall_checks_each_direction_separately():
    rep = check_woodall_bipartite(RING)
    assert not rep
    # (0, 2) is an arc so the first absent ordered cross pair is (0, 3)
    assert rep.witness == (0, 3) and rep.witness_sum == 2


def test_four_tuple_condition_on_ring():
    m = find_complete_matching(RING)
    rep = check_condition_A(RING, m)
    assert not rep
    assert rep.witness == (0, 2, 1, 3) and rep.witness_sum == 8


def test_four_tuple_condition_rejects_bad_matching():
    with pytest.raises(ValueError):
        check_condition_A(RING, Matching("XY", ((0, 3), (1, 2))))


def _alt_linked(d, pairset, x, y):
    """Existence of an admissible simple x->y path, by direct DFS."""

    def rec(path, lastflag):
        cur = path[-1]
        for w in ids_of(d.out_mask(cur)):
            f = (cur, w) in pairset
            if lastflag is not None and f == lastflag:
                continue
            if w == y:
                return True
            if w not in path and rec(path + [w], f):
                return True
        return False

    return rec([x], None)


def test_four_tuple_condition_agrees_with_brute_force():
    checked = unsat = 0
    i = 0
    while checked < 80:
        a = (2, 3, 4)[i % 3]
        d = gen_random(a, seed=4000 + i, density=0.35 + 0.12 * (i % 5))
        i += 1
        m = find_complete_matching(d)
        if not isinstance(m, Matching):
            continue
        checked += 1
        pairset = set(m.pairs)
        linked = [(x, y) for x in range(a) for y in range(a, 2 * a)
                  if _alt_linked(d, pairset, x, y)]
        deg = [degree(d, v).total for v in range(d.n)]
        bound = 6 * a + 2
        brute_ok = all(
            deg[x1] + deg[y1] + deg[x2] + deg[y2] >= bound
            for x1, y1 in linked for x2, y2 in linked
            if x1 != x2 and y1 != y2)
        rep = check_condition_A(d, m)
        assert rep.satisfied == brute_ok, (a, d.arc_bitmask())
        if not rep:
            unsat += 1
            x1, y1, x2, y2 = rep.witness
            assert (x1, y1) in linked and (x2, y2) in linked
            assert x1 != x2 and y1 != y2
            assert rep.witness_sum == deg[x1] + deg[y1] + deg[x2] + deg[y2] < bound
    assert unsat > 10


digraphs = st.integers(2, 5).flatmap(
    lambda a: st.tuples(st.just(a), st.integers(0, (1 << 2 * a * a) - 1)))


@settings(max_examples=200, deadline=None)
@given(digraphs)
def test_pair_condition_witness_sound(aw):
    a, mask = aw
    d = from_arc_bitmask(a, mask)
    rep = check_condition_M(d)
    deg = [degree(d, v).total for v in range(d.n)]
    want = all(
        deg[u] + deg[v] >= 3 * a + 1
        for u in range(d.n) for v in range(u + 1, d.n)
        if not (d.has_arc(u, v) or d.has_arc(v, u)))
    assert rep.satisfied == want
    if not rep:
        u, v = rep.witness
        assert not d.has_arc(u, v) and not d.has_arc(v, u)
        assert rep.witness_sum == deg[u] + deg[v] < rep.bound


@settings(max_examples=200, deadline=None)
@given(digraphs)
def test_min_degree_implies_pair_condition(aw):
    a, mask = aw
    d = from_arc_bitmask(a, mask)
    if check_min_degree(d):
        assert check_condition_M(d)


@settings(max_examples=150, deadline=None)
@given(digraphs, st.data())
def test_pair_condition_monotone_under_arc_addition(aw, data):
    a, mask = aw
    d = from_arc_bitmask(a, mask)
    if not check_condition_M(d):
        return
    bit = data.draw(st.integers(0, 2 * a * a - 1))
    assert check_condition_M(from_arc_bitmask(a, mask | 1 << bit))
