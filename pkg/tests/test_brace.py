"""Braces, trusses, filtrations, graded products, and the series check."""

import math
import random

import pytest

from potalg.brace import (FiniteBrace, FiniteTruss, Filtration,
                          GradedProductError, associated_graded,
                          brace_from_nilpotent_ring, check_brace,
                          check_filtration, check_truss,
                          distributivity_series, enumerate_braces,
                          filtration_from_json, first_non_right_distributive,
                          from_json, gamma_filtration, pre_lie_defect)


def cyclic_tables(n, star_fn):
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    star = [[star_fn(a, b) % n for b in range(n)] for a in range(n)]
    return add, star


def brace_z9():
    return FiniteBrace(*cyclic_tables(9, lambda a, b: 3 * a * b))


def chain_z9():
    return Filtration([set(range(9)), {0, 3, 6}, {0}])


def ring_brace_2z8():
    elems = [0, 2, 4, 6]
    idx = {e: i for i, e in enumerate(elems)}
    add = [[idx[(a + b) % 8] for b in elems] for a in elems]
    mul = [[idx[(a * b) % 8] for b in elems] for a in elems]
    return brace_from_nilpotent_ring(add, mul), idx


def test_trivial_brace_is_valid():
    B = FiniteBrace(*cyclic_tables(5, lambda a, b: 0))
    assert check_brace(B)
    assert check_truss(FiniteTruss(B.add, B.star, [0] * 5))


def test_z9_three_ab_is_a_brace():
    assert check_brace(brace_z9())


def test_z4_projection_star_fails_left_distributivity():
    B = FiniteBrace(*cyclic_tables(4, lambda a, b: a))
    verdict = check_brace(B)
    assert not verdict
    assert "distributive" in verdict.reason
    assert verdict.witness == (1, 0, 0)


def test_z6_shift_is_a_truss_but_not_a_brace():
    add, star = cyclic_tables(6, lambda a, b: 2 * a)
    alpha = [(-2 * a) % 6 for a in range(6)]
    assert check_truss(FiniteTruss(add, star, alpha))
    assert not check_brace(FiniteBrace(add, star))


def test_truss_needs_associative_circle():
    add, star = cyclic_tables(3, lambda a, b: b)
    verdict = check_truss(FiniteTruss(add, star, [0, 0, 0]))
    assert not verdict and "associative" in verdict.reason


def test_z9_filtration_valid_and_short_chain_invalid():
    B = brace_z9()
    assert check_filtration(B, chain_z9())
    bad = check_filtration(B, Filtration([set(range(9)), {0}]))
    assert not bad and "escapes" in bad.reason
    assert bad.witness == (1, 1)


def test_filtration_must_cover_carrier_and_reach_zero():
    B = brace_z9()
    assert not check_filtration(B, Filtration([{0, 3, 6}, {0}]))
    assert not check_filtration(B, Filtration([set(range(9)), {0, 3, 6}]))


def test_alpha_must_sink_to_the_third_level():
    # table-level fixture isolating the alpha branch of the check
    add, star = cyclic_tables(9, lambda a, b: 0)
    T = FiniteTruss(add, star, [0, 3, 6, 0, 3, 6, 0, 3, 6])
    verdict = check_filtration(T, chain_z9())
    assert not verdict and "alpha" in verdict.reason


def test_degree_convention():
    filt = chain_z9()
    assert math.isinf(filt.degree(0))
    assert filt.degree(3) == 2
    assert filt.degree(1) == 1


def test_graded_of_z9():
    G = associated_graded(brace_z9(), chain_z9())
    assert G.component_orders() == (3, 3)
    one = G.cls(1, 1)
    assert G.product(1, one, 1, one) == G.cls(2, 3) != 0
    assert G.product(1, one, 2, G.cls(2, 3)) is None
    assert pre_lie_defect(G) == 0


def test_graded_of_trivial_brace():
    B = FiniteBrace(*cyclic_tables(4, lambda a, b: 0))
    G = associated_graded(B, Filtration([set(range(4)), {0}]))
    assert G.component_orders() == (4,)
    assert all(G.product(1, c1, 1, c2) is None
               for c1 in range(4) for c2 in range(4))


def test_ring_brace_2z8_matches_ring_graded():
    R, idx = ring_brace_2z8()
    assert R.order == 4
    assert R.times(idx[2], idx[2]) == idx[4]
    filt = gamma_filtration(R)
    assert [sorted(s) for s in filt.chain] == [[0, 1, 2, 3], [0, 2], [0]]
    G = associated_graded(R, filt)
    assert G.component_orders() == (2, 2)
    # the graded product is the ring's: [2]*[2] = [4] in degree two
    assert G.product(1, G.cls(1, idx[2]), 1, G.cls(1, idx[2])) == \
        G.cls(2, idx[4]) != 0


def test_ring_brace_3z9_is_trivial():
    elems = [0, 3, 6]
    idx = {e: i for i, e in enumerate(elems)}
    add = [[idx[(a + b) % 9] for b in elems] for a in elems]
    mul = [[idx[(a * b) % 9] for b in elems] for a in elems]
    B = brace_from_nilpotent_ring(add, mul)
    assert B.order == 3
    assert all(B.times(a, b) == 0 for a in range(3) for b in range(3))


def test_zero_ring_gives_trivial_brace():
    B = brace_from_nilpotent_ring([[0]], [[0]])
    assert B.order == 1 and check_brace(B)


def test_unit_ring_is_rejected():
    n = 4
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    with pytest.raises(ValueError):
        brace_from_nilpotent_ring(add, mul)


def upper_unitriangular_f2():
    # strictly upper triangular 3x3 over GF(2), coded as bits (p, q, r)
    def unpack(e):
        return e & 1, (e >> 1) & 1, (e >> 2) & 1

    def pack(p, q, r):
        return p | (q << 1) | (r << 2)

    add = [[a ^ b for b in range(8)] for a in range(8)]
    mul = []
    for a in range(8):
        p, q, r = unpack(a)
        row = []
        for b in range(8):
            p2, q2, r2 = unpack(b)
            row.append(pack(0, 0, p * q2))
        mul.append(row)
    return add, mul


def test_upper_unitriangular_matrices_form_a_brace():
    add, mul = upper_unitriangular_f2()
    B = brace_from_nilpotent_ring(add, mul)
    filt = gamma_filtration(B)
    assert filt.length == 3
    G = associated_graded(B, filt)
    assert G.component_orders() == (4, 2)
    assert pre_lie_defect(G) == 0


def test_series_on_right_distributive_examples_is_flat():
    B = brace_z9()
    for a, b, c in ((1, 2, 4), (5, 7, 8), (3, 6, 1)):
        out = distributivity_series(B, a, b, c, 3)
        assert out["direct"] == 0
        assert out["partial_sums"] == [0, 0, 0]
        assert out["exact"]


def test_first_non_right_distributive_golden():
    B, witness, filt = first_non_right_distributive(8)
    assert B.order == 8
    assert witness == (1, 1, 1)
    assert [sorted(s) for s in filt.chain] == \
        [[0, 1, 2, 3, 4, 5, 6, 7], [0, 2, 4, 6], [0, 4], [0]]
    out = distributivity_series(B, *witness, filt.length)
    assert out["direct"] == 4 and out["exact"]
    G = associated_graded(B, filt)
    assert G.component_orders() == (2, 2, 2)
    assert pre_lie_defect(G) == 0


def test_series_exact_for_all_triples_of_the_golden():
    B, _, filt = first_non_right_distributive(8)
    N = filt.length
    for a in range(B.order):
        for b in range(B.order):
            for c in range(B.order):
                assert distributivity_series(B, a, b, c, N)["exact"]


def test_enumeration_is_deterministic_and_verified():
    braces = list(enumerate_braces(8))
    assert len(braces) == 19
    orders = [B.order for B in braces]
    assert orders == sorted(orders)
    assert all(check_brace(B) for B in braces)


def test_degree_bound_on_all_filtered_examples():
    cases = [(brace_z9(), chain_z9())]
    for B in enumerate_braces(8):
        try:
            cases.append((B, gamma_filtration(B)))
        except ValueError:
            continue
    assert len(cases) > 10
    for B, filt in cases:
        assert check_filtration(B, filt)
        for a in range(1, B.order):
            for b in range(1, B.order):
                if not filt.degree(a) < filt.degree(b):
                    continue
                for c in range(1, B.order):
                    defect = B.minus(
                        B.times(B.plus(a, b), c),
                        B.plus(B.times(a, c), B.times(b, c)))
                    assert filt.degree(defect) > \
                        filt.degree(b) + filt.degree(c)


def test_graded_prelie_holds_on_all_filtered_examples():
    for B in enumerate_braces(8):
        try:
            filt = gamma_filtration(B)
        except ValueError:
            continue
        assert pre_lie_defect(associated_graded(B, filt)) == 0


def test_series_exact_at_chain_length_everywhere():
    rng = random.Random(20240815)
    for B in enumerate_braces(8):
        try:
            filt = gamma_filtration(B)
        except ValueError:
            continue
        for _ in range(40):
            a = rng.randrange(B.order)
            b = rng.randrange(B.order)
            c = rng.randrange(B.order)
            assert distributivity_series(B, a, b, c, filt.length)["exact"]


def test_json_round_trip():
    B = brace_z9()
    doc = B.to_json()
    again = from_json(doc)
    assert isinstance(again, FiniteBrace)
    assert again.add == B.add and again.star == B.star

    add, star = cyclic_tables(6, lambda a, b: 2 * a)
    T = FiniteTruss(add, star, [(-2 * a) % 6 for a in range(6)])
    loaded = from_json(T.to_json())
    assert isinstance(loaded, FiniteTruss) and loaded.alpha == T.alpha

    doc = dict(B.to_json(), filtration=[[0, 3, 6]])
    filt = filtration_from_json(doc, B)
    assert [sorted(s) for s in filt.chain] == [list(range(9)), [0, 3, 6],
                                               [0]]
    with pytest.raises(ValueError):
        filtration_from_json(dict(doc, filtration=[[0, 9]]), B)


def test_malformed_tables_are_rejected():
    with pytest.raises(ValueError):
        FiniteBrace([[0, 1], [1, 0]], [[0, 0]])
    with pytest.raises(ValueError):
        FiniteTruss([[0]], [[0]], [1])
