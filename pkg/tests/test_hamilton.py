"""Decomposition, bridges, splices, oracle and the driver."""

from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biham.compat import CapExceeded, CycleCertificate
from biham.digraph import from_arc_bitmask, induced, new_digraph
from biham.generators import gen_Dprime, gen_complete, gen_random, gen_random_M
from biham.hamilton import (
    ORACLE_CAP,
    BridgeTerminal,
    Decomposition,
    DecompositionError,
    MergePlan,
    decompose,
    find_bridge_path,
    find_hamiltonian_cycle,
    oracle_cycle,
    oracle_hamiltonian,
    splice,
    verify_cycle,
)
from biham.matching import Matching

RING = new_digraph(2, [(0, 2), (2, 1), (1, 3), (3, 0)])


def _double_chord_setup():
    """Six-cycle plus a pair where the only bridge needs both chords."""
    arcs = [(0, 4), (4, 1), (1, 5), (5, 2), (2, 6), (6, 0),
            (3, 7), (4, 3), (7, 2), (6, 1), (5, 0)]
    d = new_digraph(4, arcs)
    m = Matching("XY", ((0, 4), (1, 5), (2, 6), (3, 7)))
    cyc = CycleCertificate((0, 4, 1, 5, 2, 6), (True, False, True, False, True, False))
    return d, Decomposition((cyc,), (3, 7), m)


# -- oracle ------------------------------------------------------------------


def test_oracle_on_small_instances():
    seq = oracle_cycle(gen_complete(3))
    assert seq is not None and verify_cycle(gen_complete(3), seq)
    assert oracle_cycle(RING) == (0, 2, 1, 3)
    assert oracle_hamiltonian(RING)
    assert not oracle_hamiltonian(gen_Dprime(4))


def test_oracle_cap():
    big = gen_complete(13)  # 26 vertices
    with pytest.raises(CapExceeded):
        oracle_cycle(big)
    with pytest.raises(ValueError):
        oracle_cycle(gen_complete(2), cap=ORACLE_CAP + 1)
    with pytest.raises(CapExceeded):
        oracle_cycle(gen_complete(3), cap=4)


def test_verify_cycle():
    assert verify_cycle(RING, [0, 2, 1, 3])
    assert verify_cycle(RING, (2, 1, 3, 0))  # any rotation works
    assert not verify_cycle(RING, [0, 2, 1])  # wrong length
    assert not verify_cycle(RING, [0, 2, 0, 2])  # repeats
    assert not verify_cycle(RING, [0, 2, 3, 1])  # missing arc
    assert not verify_cycle(RING, [0, 2, 1, 7])  # out of range


# -- decomposition -----------------------------------------------------------


def test_decompose_single_cycle():
    dec = decompose(RING)
    assert len(dec.cycles) == 1 and not dec.leftover
    assert dec.cycles[0].vertices == (0, 2, 1, 3)
    assert dec.validate(RING)
    with pytest.raises(ValueError):
        decompose(RING, mode="fast")


def test_decompose_with_leftover_pair():
    d = gen_random(3, seed=2004, density=0.7)
    dec = decompose(d)
    assert [c.length for c in dec.cycles] == [4]
    assert dec.leftover and dec.validate(d)
    x, y = dec.leftover
    assert d.has_arc(x, y) and dec.matching.as_dict()[x] == y


def test_decompose_two_cycles():
    d = gen_random(6, seed=2147, density=0.5)
    dec = decompose(d)
    assert [c.length for c in dec.cycles] == [8, 4]
    assert dec.validate(d)
    assert dec.component_count == 2


def test_decompose_reports_hall_violator():
    d = new_digraph(2, [(0, 2), (1, 2), (2, 0), (3, 1)])
    with pytest.raises(DecompositionError) as ei:
        decompose(d)
    err = ei.value
    assert err.scope_mask == d.v_mask
    assert err.violator is not None and err.violator.validate(d)


def test_decompose_heuristic_mode_still_validates():
    for i in range(20):
        d = gen_random(5, seed=700 + i, density=0.55)
        try:
            dec = decompose(d, mode="heuristic")
        except DecompositionError:
            continue
        assert dec.validate(d)


def test_decomposition_validate_rejects_tampering():
    d, dec = _double_chord_setup()
    assert dec.validate(d)
    assert not Decomposition(dec.cycles, (7, 3), dec.matching).validate(d)
    assert not Decomposition(dec.cycles, (), dec.matching).validate(d)
    assert not Decomposition(
        dec.cycles, dec.leftover,
        Matching("XY", ((0, 5), (1, 4), (2, 6), (3, 7)))).validate(d)


# -- bridges and splices -----------------------------------------------------


def test_bridge_insert_plan():
    d = gen_random(4, seed=3253, density=0.6)
    dec = decompose(d)
    assert [c.length for c in dec.cycles] == [4, 4]
    plan = find_bridge_path(d, dec)
    assert isinstance(plan, MergePlan)
    assert plan.kind == "insert" and plan.target == 0
    assert plan.path == (1, 4) and (plan.i0, plan.j0) == (0, 1)
    nxt = splice(d, dec, plan)
    assert [c.length for c in nxt.cycles] == [6]
    assert nxt.leftover == (3, 7)
    assert nxt.validate(d)


def test_bridge_rematch_plan():
    d = gen_random(4, seed=2069, density=0.7)
    dec = decompose(d)
    assert [c.length for c in dec.cycles] == [6] and dec.leftover == (0, 7)
    plan = find_bridge_path(d, dec)
    assert plan.kind == "rematch"
    assert plan.rematch_drop == ((3, 4), (0, 7))
    assert plan.rematch_add == ((3, 7), (0, 4))
    nxt = splice(d, dec, plan)
    assert [c.length for c in nxt.cycles] == [8] and not nxt.leftover
    assert nxt.validate(d)


def test_bridge_double_chord_plan():
    d, dec = _double_chord_setup()
    plan = find_bridge_path(d, dec)
    assert plan.kind == "double_chord"
    assert (plan.target, plan.i0, plan.j0, plan.s) == (0, 0, 2, 2)
    assert plan.path == (3, 7)
    nxt = splice(d, dec, plan)
    assert [c.length for c in nxt.cycles] == [8]
    assert nxt.cycles[0].vertices == (0, 4, 3, 7, 2, 6, 1, 5)
    assert nxt.validate(d) and verify_cycle(d, nxt.cycles[0])


def test_splice_rejects_plan_with_absent_arc():
    d, dec = _double_chord_setup()
    plan = find_bridge_path(d, dec)
    bad = dataclasses.replace(plan, new_arcs=((0, 5),) + plan.new_arcs)
    with pytest.raises(ValueError, match="not in D"):
        splice(d, dec, bad)


def test_bridge_needs_multiple_components():
    dec = decompose(RING)
    with pytest.raises(ValueError):
        find_bridge_path(RING, dec)


def test_bridge_terminal_lists_missing_arcs():
    d = gen_Dprime(4)
    dec = decompose(d)
    assert [c.length for c in dec.cycles] == [4, 4]
    got = find_bridge_path(d, dec)
    assert isinstance(got, BridgeTerminal)
    assert got.target == 0
    assert got.missing == ((7, 0), (7, 1), (6, 0), (6, 1))
    assert all(not d.has_arc(u, v) for u, v in got.missing)
    assert "connecting arcs are absent" in got.note


# -- driver ------------------------------------------------------------------


def test_driver_pure_construction():
    r = find_hamiltonian_cycle(RING, use_oracle=False)
    assert r.hamiltonian is True and r.method == "construct" and r.merges == 0
    assert verify_cycle(RING, r.certificate)
    assert r.certificate.validate(RING, r.matching)


def test_driver_construction_with_merges():
    d = gen_random(5, seed=2262, density=0.5)
    r = find_hamiltonian_cycle(d, use_oracle=False)
    assert r.hamiltonian is True and r.method == "construct"
    assert r.merges == 2
    assert verify_cycle(d, r.certificate)
    assert r.certificate.validate(d, r.matching)


def test_driver_falls_back_to_oracle():
    d = gen_Dprime(4)
    r = find_hamiltonian_cycle(d)
    assert r.hamiltonian is False and r.method == "oracle"
    assert r.terminal is not None and r.certificate is None

    stuck = find_hamiltonian_cycle(d, use_oracle=False)
    assert stuck.hamiltonian is None and stuck.method == "none"
    assert stuck.terminal is not None


def test_driver_oracle_path_produces_valid_certificates():
    # hamiltonian but the decomposition cannot even start: no matching
    d = new_digraph(2, [(0, 2), (1, 2), (2, 0), (3, 1), (2, 1), (0, 3)])
    r = find_hamiltonian_cycle(d)
    if r.method == "oracle" and r.hamiltonian:
        assert verify_cycle(d, r.certificate)
        assert r.certificate.validate(d, r.matching)


def test_driver_construction_beyond_oracle_cap():
    d = gen_random_M(13, seed=3)  # 26 vertices, over the oracle cap
    r = find_hamiltonian_cycle(d)
    assert r.hamiltonian is True and r.method == "construct"
    assert verify_cycle(d, r.certificate)


def test_driver_undecided_beyond_oracle_cap():
    r = find_hamiltonian_cycle(gen_Dprime(14))
    assert r.hamiltonian is None and r.method == "none"
    assert "oracle out of reach" in r.note


def test_driver_agrees_with_oracle_on_random_corpus():
    agree = 0
    for i in range(120):
        a = (3, 4, 5)[i % 3]
        d = gen_random(a, seed=5000 + i, density=0.25 + 0.1 * (i % 6))
        r = find_hamiltonian_cycle(d)
        want = oracle_hamiltonian(d)
        assert r.hamiltonian == want, (a, d.arc_bitmask())
        if r.hamiltonian:
            assert verify_cycle(d, r.certificate)
            assert r.certificate.validate(d, r.matching)
        agree += 1
    assert agree == 120


masks = st.integers(2, 3).flatmap(
    lambda a: st.tuples(st.just(a), st.integers(0, (1 << 2 * a * a) - 1)))


@settings(max_examples=200, deadline=None)
@given(masks)
def test_driver_verdict_matches_oracle(aw):
    a, mask = aw
    d = from_arc_bitmask(a, mask)
    r = find_hamiltonian_cycle(d)
    assert r.hamiltonian == oracle_hamiltonian(d)
    if r.hamiltonian:
        assert verify_cycle(d, r.certificate)
