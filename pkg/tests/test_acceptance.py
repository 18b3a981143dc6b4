"""End-to-end acceptance suite.

Nine checks, one test each: two exhaustive sweeps at small class sizes,
three generator families with pinned extremal properties, the unique tight
semi-degree example, a structural suite over seeded condition-holding
instances, constructor/oracle agreement, and the min-degree implication.
All of them run with zero tolerance: any exception instance fails the test.
"""

from __future__ import annotations

import time
from itertools import product

from biham.compat import compatible_path, longest_compatible_cycle
from biham.conditions import check_condition_A, check_condition_M, check_min_degree
from biham.digraph import (
    BipartiteDigraph,
    degree,
    from_arc_bitmask,
    induced,
    is_strongly_connected,
    mask_of,
)
from biham.generators import (
    canonical_form,
    fig1_digraph,
    gen_Dak,
    gen_Dprime,
    gen_Tak,
    gen_random,
    gen_random_M,
)
from biham.hamilton import decompose, find_hamiltonian_cycle, oracle_cycle, verify_cycle
from biham.matching import Matching, check_expansion, find_complete_matching


def _exhaustive_pair_condition_sweep(a: int) -> int:
    """Every digraph meeting the pair-degree bound must be hamiltonian,
    with the oracle and the constructor agreeing on a verified cycle."""
    holds = 0
    for mask in range(1 << 2 * a * a):
        d = from_arc_bitmask(a, mask)
        if not check_condition_M(d):
            continue
        holds += 1
        assert oracle_cycle(d) is not None, f"a={a} mask={mask}: not hamiltonian"
        res = find_hamiltonian_cycle(d)
        assert res.hamiltonian is True, f"a={a} mask={mask}: constructor failed"
        assert verify_cycle(d, res.certificate), f"a={a} mask={mask}: bad certificate"
    return holds


def test_exhaustive_a2_pair_condition_implies_hamiltonian():
    t0 = time.monotonic()
    assert _exhaustive_pair_condition_sweep(2) == 9
    assert time.monotonic() - t0 < 1.0


def test_exhaustive_a3_pair_condition_implies_hamiltonian():
    t0 = time.monotonic()
    assert _exhaustive_pair_condition_sweep(3) == 211
    assert time.monotonic() - t0 < 600.0


def test_half_block_family_tightness():
    for a in (2, 4, 6, 8, 10):
        d = gen_Dprime(a)
        assert all(degree(d, v).total == 3 * a // 2 for v in range(d.n)), a
        assert oracle_cycle(d) is None, a


def test_overlap_block_family_properties():
    params = [(a, k) for a in range(3, 7) for k in range(1, (a - 1) // 2 + 1)]
    assert params == [(3, 1), (4, 1), (5, 1), (5, 2), (6, 1), (6, 2)]
    for a, k in params:
        d = gen_Dak(a, k)
        assert is_strongly_connected(d), (a, k)
        assert min(degree(d, v).total for v in range(d.n)) == a + k, (a, k)
        assert oracle_cycle(d) is None, (a, k)


def test_tournament_family_properties():
    for a in range(3, 7):
        for k in range(1, (a - 1) // 2 + 1):
            d = gen_Tak(a, k)
            assert d.arc_count == a * a, (a, k)
            for x in range(a):
                for y in range(a, 2 * a):
                    assert d.has_arc(x, y) != d.has_arc(y, x), (a, k, x, y)
            assert is_strongly_connected(d), (a, k)
            assert oracle_cycle(d) is None, (a, k)


def test_unique_tight_semi_degree_class():
    # independent rescan: all 6-vertex digraphs with both semi-degrees >= 2
    out_x = [m << 3 for m in (0b011, 0b101, 0b110, 0b111)]
    out_y = [0b011, 0b101, 0b110, 0b111]
    classes = set()
    for masks in product(out_x, out_x, out_x, out_y, out_y, out_y):
        d = BipartiteDigraph(3, masks)
        if any(degree(d, v).in_ < 2 for v in range(6)):
            continue
        if oracle_cycle(d) is None:
            classes.add(canonical_form(d).arc_bitmask())
    assert len(classes) == 1
    pinned = fig1_digraph()
    assert classes == {pinned.arc_bitmask()} == {122101}


def _condition_corpus():
    for i in range(1000):
        a = 4 + i % 5
        budget = (None, a * a, 2 * a)[i % 3]
        yield i, gen_random_M(a, seed=i, budget=budget)


def test_seeded_condition_instances_structural_suite():
    for i, d in _condition_corpus():
        assert check_condition_M(d), i

        # (i) small sets always expand
        assert check_expansion(d).holds, i

        # (ii) a complete matching exists in some direction
        m = find_complete_matching(d)
        m_yx = find_complete_matching(d, "YX")
        assert isinstance(m, Matching) or isinstance(m_yx, Matching), i

        # (iii) with the canonical matching: spanning compatible cycle, or
        # every ordered vertex pair joined by a compatible path
        assert isinstance(m, Matching), i
        cyc = longest_compatible_cycle(d, m)
        if cyc is None or cyc.length < d.n:
            for u in range(d.n):
                for v in range(d.n):
                    if u != v:
                        assert compatible_path(d, m, u, v) is not None, (i, u, v)

        # (iv) the four-tuple bound holds on every stage remainder of 4+
        # vertices; (v) the decomposition invariant holds throughout
        dec = decompose(d)
        assert dec.validate(d), i
        rem = d.v_mask
        for cert in dec.cycles:
            if rem.bit_count() >= 4:
                db, _ = induced(d, rem).to_balanced()
                mb = find_complete_matching(db)
                assert isinstance(mb, Matching), i
                assert check_condition_A(db, mb), i
            rem &= ~mask_of(cert.vertices)


def test_constructor_oracle_agreement():
    # the condition-holding corpus: construction must succeed on its own
    for i, d in _condition_corpus():
        res = find_hamiltonian_cycle(d)
        assert res.hamiltonian is True and res.method == "construct", i
        assert verify_cycle(d, res.certificate), i

    # plus 1000 instances that break the condition, verdicts vs the oracle
    checked = 0
    i = 0
    while checked < 1000:
        assert i < 1500, "corpus recipe stopped yielding instances"
        a = (3, 3, 4, 4, 5, 5, 6, 7, 8, 10)[i % 10]
        d = gen_random(a, seed=31337 + i, density=0.2 + (i % 6) * 0.12)
        i += 1
        if check_condition_M(d):
            continue
        checked += 1
        res = find_hamiltonian_cycle(d)
        want = oracle_cycle(d) is not None
        assert res.hamiltonian == want, (a, 31337 + i - 1)
        if res.certificate is not None:
            assert verify_cycle(d, res.certificate), (a, 31337 + i - 1)


def test_min_degree_implication_exhaustive():
    for a in (2, 3):
        for mask in range(1 << 2 * a * a):
            d = from_arc_bitmask(a, mask)
            if check_min_degree(d):
                assert check_condition_M(d), (a, mask)
