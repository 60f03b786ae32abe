"""Truncated completion, normal forms, and the independent dimension oracle.

The running fixtures: R1 = {xy + yx, x^2 + y^3} and its perturbation
R2 = {xy + yx, x^2 + y^3 + y^4}. Both complete at cap 8 to the same four
leading words, and the quotient has total dimension 9.
"""

import random

import pytest

from potalg.fields import GF, QQ, FieldError, ResourceCapError
from potalg.freepoly import FreePoly, random_poly
from potalg.parsing import parse_poly, render
from potalg.potential import cyclic_symmetrize, relations_of
from potalg.rewrite import (ambiguities, complete, normal_form,
                            normal_words_by_degree, oracle_dimension,
                            s_polynomial, verify_complete)
from potalg.words import MonomialOrder

XY = MonomialOrder()


def P(s, cap=None, field=QQ):
    return parse_poly(s, field, cap)


def r1(cap=8, field=QQ):
    return [parse_poly("x y + y x", field, cap),
            parse_poly("x^2 + y^3", field, cap)]


def test_ambiguity_enumeration():
    ambs = ambiguities(r1(), XY, 8)
    assert [(a.kind, a.witness) for a in ambs] == \
        [("overlap", "xxy"), ("overlap", "xxx")]
    assert all(a.degree == 3 for a in ambs)


def test_s_polynomials_of_r1():
    rels = r1()
    by_witness = {a.witness: a for a in ambiguities(rels, XY, 8)}
    s_xxy = s_polynomial(by_witness["xxy"], rels, XY, 8)
    assert s_xxy == P("x y x - y^4")
    assert normal_form(s_xxy, (rels, XY, 8)).is_zero()
    # the unresolved ambiguity that forces y^3 x into the basis
    s_xxx = s_polynomial(by_witness["xxx"], rels, XY, 8)
    assert normal_form(s_xxx, (rels, XY, 8)) == P("-2 y^3 x")


def test_complete_r1_golden():
    G = complete(r1(), XY, 8)
    assert [render(g, XY) for g in G.elements] == \
        ["x^2 + y^3", "x y + y x", "y^3 x", "y^6"]
    assert G.leads == ["xx", "xy", "yyyx", "yyyyyy"]
    assert G.complete_through == 2
    assert verify_complete(G)


def test_complete_r2_golden():
    G = complete([P("x y + y x", cap=8), P("x^2 + y^3 + y^4", cap=8)], XY, 8)
    assert [render(g, XY) for g in G.elements] == \
        ["x^2 + y^3 + y^4", "x y + y x", "y^3 x", "y^6"]
    assert verify_complete(G)


def test_complete_potential_relations_golden():
    rels = relations_of(P("x^3 + y^3 + cyc(x y x y)", cap=9))
    G = complete(list(rels), XY, 9)
    assert [render(g, XY) for g in G.elements] == \
        ["x^2 + 2 y x y", "y^2 + 2 x y x", "x y x y - y x y x"]
    assert G.complete_through == 5


def test_complete_global_mode_golden():
    glo = MonomialOrder(mode="global")
    G = complete(r1(), glo, 8)
    assert [render(g, glo) for g in G.elements] == \
        ["x^3", "x^2 + y^3", "x y + y x"]
    assert G.leads == ["xxx", "yyy", "xy"]
    assert verify_complete(G)


def test_normal_form_goldens():
    G = complete(r1(), XY, 8)
    assert normal_form(P("x y + y x", cap=8), G).is_zero()
    assert normal_form(P("x^2", cap=8), G) == P("-y^3")
    assert normal_form(P("x^2 y", cap=8), G) == P("-y^4")
    assert normal_form(P("y^2 x", cap=8), G) == P("y^2 x")


def test_normal_form_accepts_tuple_or_system():
    G = complete(r1(), XY, 8)
    f = P("x^3 + x y x", cap=8)
    assert normal_form(f, G) == normal_form(f, (list(G.elements), XY, 8))


def test_normal_form_is_linear_and_idempotent():
    G = complete(r1(), XY, 8)
    rng = random.Random(31)
    for _ in range(30):
        f = random_poly(rng, degrees=(1, 2, 3, 4), terms=4, cap=8)
        g = random_poly(rng, degrees=(1, 2, 3, 4), terms=4, cap=8)
        nf, ng = normal_form(f, G), normal_form(g, G)
        assert normal_form(f + g, G) == nf + ng
        assert normal_form(nf, G) == nf


def test_ideal_members_reduce_to_zero():
    G = complete(r1(), XY, 8)
    rng = random.Random(41)
    words = ["", "x", "y", "xy", "yx", "xx", "yy"]
    for _ in range(40):
        g = r1()[rng.randrange(2)]
        u = FreePoly.term(rng.choice(words), cap=8)
        v = FreePoly.term(rng.choice(words), cap=8)
        assert normal_form(u * g * v, G).is_zero()


def test_complete_input_validation():
    with pytest.raises(ValueError):
        complete([FreePoly.zero(QQ, 8)], XY, 8)
    with pytest.raises(ValueError):
        complete([P("x^9", cap=12)], XY, 8)
    with pytest.raises(ValueError):
        complete([P("x^3 + y^4", cap=12)], XY, 2)


def test_empty_relations_give_the_free_algebra():
    G = complete([], XY, 6)
    assert G.elements == ()
    assert G.complete_through == 6
    assert oracle_dimension([], 6) == (1, 2, 4, 8, 16, 32, 64)


def test_normal_words_layers_golden():
    G = complete(r1(), XY, 8)
    layers = normal_words_by_degree(G)
    assert layers[:6] == [[""], ["x", "y"], ["yx", "yy"],
                          ["yyx", "yyy"], ["yyyy"], ["yyyyy"]]
    assert all(layer == [] for layer in layers[6:])


def test_oracle_golden_and_cap_guard():
    assert oracle_dimension(r1(), 8) == (1, 2, 2, 2, 1, 1, 0, 0, 0)
    rels = relations_of(P("x^3 + y^3 + cyc(x y x y)", cap=8))
    assert oracle_dimension(list(rels), 8) == (1, 2, 2, 2, 1, 0, 0, 0, 0)
    with pytest.raises(ResourceCapError):
        oracle_dimension(r1(), 13)


def test_oracle_agrees_with_completion_on_random_potentials():
    from potalg.quotient import hilbert
    rng = random.Random(77)
    for _ in range(5):
        body = cyclic_symmetrize(random_poly(rng, degrees=(3, 4), terms=3,
                                             cap=6))
        if body.is_zero():
            continue
        rels = [g for g in relations_of(body) if not g.is_zero()]
        if not rels:
            continue
        G = complete(rels, XY, 6)
        assert hilbert(G).hilbert == oracle_dimension(rels, 6)


def test_hilbert_is_precedence_independent():
    """Within a mode the counts cannot depend on the letter precedence.

    Across modes they genuinely differ: the local mode grades the
    power-series quotient, the global mode the polynomial one.
    """
    from potalg.quotient import hilbert
    for order in (XY, MonomialOrder("yx")):
        G = complete(r1(), order, 8)
        assert hilbert(G).hilbert == (1, 2, 2, 2, 1, 1, 0, 0, 0)
        assert oracle_dimension(r1(), 8, order) == (1, 2, 2, 2, 1, 1, 0, 0, 0)
    for order in (MonomialOrder(mode="global"), MonomialOrder("yx", "global")):
        G = complete(r1(), order, 8)
        assert hilbert(G).hilbert == (1, 2, 3, 2, 1, 0, 0, 0, 0)


def test_the_two_modes_quotient_differently():
    # x = x^2 telescopes to x = 0 in the closure but not in the plain ideal
    from potalg.quotient import hilbert
    rel = [P("x - x^2", cap=6)]
    loc = complete(rel, XY, 6)
    assert hilbert(loc).hilbert == (1, 1, 1, 1, 1, 1, 1)
    assert oracle_dimension(rel, 6) == (1, 1, 1, 1, 1, 1, 1)
    glo = complete(rel, MonomialOrder(mode="global"), 6)
    assert hilbert(glo).hilbert == (1, 2, 3, 5, 8, 13, 21)
    with pytest.raises(ValueError):
        oracle_dimension(rel, 6, MonomialOrder(mode="global"))


def test_completion_is_deterministic():
    a = complete(r1(), XY, 8)
    b = complete(list(reversed(r1())), XY, 8)
    assert [render(g, XY) for g in a.elements] == \
        [render(g, XY) for g in b.elements]


def test_completion_over_prime_field():
    F = GF(7)
    G = complete([parse_poly(t, F, 8) for t in ("x y + y x", "x^2 + y^3")],
                 XY, 8)
    assert G.leads == ["xx", "xy", "yyyx", "yyyyyy"]
    assert verify_complete(G)
