import random

import pytest
from hypothesis import given, settings, strategies as st

from quasikit.category import build_schema
from quasikit.checks import limit_instance
from quasikit.errors import LabelMismatch, ObjectMismatch
from quasikit.lattice import chain, chain3
from quasikit.limits import (
    binary_coproduct,
    binary_product,
    coequalizer,
    equalizer,
    initial,
    is_pullback,
    is_pushout,
    pullback,
    pushout,
    terminal,
    verify_universal,
)
from quasikit.presheaf import REGULAR_MONO, FuzzyMorphism, classify_mono, compose, fuzzy_presheaf
from quasikit.serialize import load_fixture

TERM = build_schema("terminal")
C3 = chain3()


def fset(mu):
    """A fuzzy set over the terminal schema."""
    return fuzzy_presheaf(TERM, {"*": list(mu)}, {}, C3, {"*": dict(mu)})


def fmap(A, B, table):
    return FuzzyMorphism(A, B, {"*": table})


def test_terminal_and_initial():
    G = build_schema("graph")
    T = terminal(G, C3)
    assert [len(T.carrier(i)) for i in G.objects] == [1, 1]
    assert {T.mu(i, T.carrier(i)[0]) for i in G.objects} == {"1"}
    assert all(not initial(G, C3).carrier(i) for i in G.objects)


def test_pullback_membership_is_meet():
    B = fset({"b1": "1", "b2": "1/2"})
    Cc = fset({"c": "1/2"})
    D = fset({"d": "1"})
    f = fmap(B, D, {"b1": "d", "b2": "d"})
    g = fmap(Cc, D, {"c": "d"})
    P, p1, p2 = pullback(f, g)
    mus = sorted((p1("*", x), p2("*", x), P.mu("*", x)) for x in P.carrier("*"))
    assert mus == [("b1", "c", "1/2"), ("b2", "c", "1/2")]


def test_pushout_membership_is_join():
    A = fset({"a": "0"})
    B = fset({"b": "1/2"})
    Cc = fset({"c": "1"})
    Q, i1, i2 = pushout(fmap(A, B, {"a": "b"}), fmap(A, Cc, {"a": "c"}))
    (q,) = Q.carrier("*")
    assert Q.mu("*", q) == "1"
    assert i1("*", "b") == i2("*", "c") == q


def test_product_and_coproduct_sizes():
    A = fset({"x": "1", "y": "1/2"})
    B = fset({"z": "1/2"})
    P, _, _ = binary_product(A, B)
    S, _, _ = binary_coproduct(A, B)
    assert len(P.carrier("*")) == 2 and len(S.carrier("*")) == 3
    assert sorted(P.mu("*", x) for x in P.carrier("*")) == ["1/2", "1/2"]


def test_equalizer_and_coequalizer():
    A = fset({"x": "1", "y": "1"})
    B = fset({"u": "1", "v": "1"})
    f = fmap(A, B, {"x": "u", "y": "v"})
    g = fmap(A, B, {"x": "u", "y": "u"})
    E, e = equalizer(f, g)
    assert [e("*", z) for z in E.carrier("*")] == ["x"]
    assert classify_mono(e) == REGULAR_MONO
    Q, q = coequalizer(f, g)
    assert len(Q.carrier("*")) == 1


def test_verify_universal_negatives():
    A = fset({"x": "1"})
    B = fset({"y": "1"})
    P, p1, p2 = binary_product(A, B)
    lowered = P.with_membership({"*": {z: "1/2" for z in P.carrier("*")}})
    rep = verify_universal("product", (A, B), lowered,
                           (FuzzyMorphism(lowered, A, p1.components), FuzzyMorphism(lowered, B, p2.components)))
    assert not rep.ok and rep.counterexample
    S, i1, i2 = binary_coproduct(fset({"x": "1/2"}), B)
    raised = S.with_membership({"*": {z: "1" for z in S.carrier("*")}})
    rep = verify_universal("coproduct", (fset({"x": "1/2"}), B), raised,
                           (FuzzyMorphism(fset({"x": "1/2"}), raised, i1.components), FuzzyMorphism(B, raised, i2.components)))
    assert not rep.ok


def test_diagonal_is_not_a_pullback():
    A = fset({"x": "1", "y": "1/2"})
    D = fset({"d": "1"})
    f = fmap(A, D, {"x": "d", "y": "d"})
    P, p1, p2 = pullback(f, f)
    assert is_pullback(f, f, p1, p2)
    Dg, e = equalizer(p1, p2)
    assert not is_pullback(f, f, compose(p1, e), compose(p2, e))
    assert not verify_universal("pullback", (f, f), Dg, (compose(p1, e), compose(p2, e))).ok


def test_mismatches():
    one = load_fixture("point-one.json")
    crisp = fuzzy_presheaf(TERM, {"*": ["a"]}, {}, chain(["0", "1"]))
    with pytest.raises(LabelMismatch):
        binary_product(one, crisp)
    f = fmap(one, one, {"a": "a"})
    g = fmap(fset({"q": "1"}), fset({"q": "1"}), {"q": "q"})
    with pytest.raises(ObjectMismatch):
        pullback(f, g)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["pullback", "pushout", "equalizer", "coequalizer"]))
def test_fast_decisions_agree_with_brute_force(seed, kind):
    G = build_schema("graph")
    rng = random.Random(seed)
    diagram, apex, legs = limit_instance(kind, G, C3, rng, None, max_carrier=2)
    assert verify_universal(kind, diagram, apex, legs).ok
    if kind == "pullback":
        assert is_pullback(*diagram, *legs)
    if kind == "pushout":
        assert is_pushout(*diagram, *legs)
