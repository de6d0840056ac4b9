import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_homs
from quasikit.category import build_schema
from quasikit.errors import ObjectMismatch
from quasikit.exponential import curry, evaluation, exponential_object, postcompose, uncurry
from quasikit.instances import random_hom, random_presheaf
from quasikit.lattice import chain3
from quasikit.limits import binary_product
from quasikit.presheaf import FuzzyMorphism, fuzzy_presheaf, validate_fuzzy_morphism
from quasikit.serialize import load_fixture

C3 = chain3()
TERM = build_schema("terminal")


def fset(mu):
    return fuzzy_presheaf(TERM, {"*": list(mu)}, {}, C3, {"*": dict(mu)})


def test_fuzzy_set_exponential_membership():
    # θ(f) is the meet over a of α(a) ⇒ β(f a)
    A = fset({"a1": "1", "a2": "1/2"})
    B = fset({"b1": "1/2", "b2": "0"})
    exp = exponential_object(A, B)
    assert len(exp.obj.carrier("*")) == 4
    got = {}
    for x in exp.obj.carrier("*"):
        table = exp.decode("*", x)["*"]
        f = {a: b for (_, a), b in table.items()}
        got[(f["a1"], f["a2"])] = exp.obj.mu("*", x)
    assert got == {
        ("b1", "b1"): "1/2",
        ("b1", "b2"): "0",
        ("b2", "b1"): "0",
        ("b2", "b2"): "0",
    }


def test_single_point_example():
    exp = exponential_object(load_fixture("point-one.json"), load_fixture("point-half.json"))
    assert [exp.obj.mu("*", x) for x in exp.obj.carrier("*")] == ["1/2"]


def test_graph_exponential_vertices():
    A, B = load_fixture("one-edge.json"), load_fixture("triangle.json")
    exp = exponential_object(A, B)
    assert len(exp.obj.carrier("V")) == 3 ** 2
    # edges of B^A are the graph maps from the one-edge graph times A
    Y = load_fixture("one-edge.json")
    P = binary_product(Y.with_membership({i: {x: "1" for x in Y.carrier(i)} for i in Y.category.objects}), A)[0]
    assert len(exp.obj.carrier("E")) == len(naive_homs(P, B, membership=False))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_currying_round_trip(seed):
    rng = random.Random(seed)
    G = build_schema("graph")
    Cobj, A, B = (random_presheaf(G, C3, rng, max_carrier=2) for _ in range(3))
    exp = exponential_object(A, B)
    P = binary_product(Cobj, A)[0]
    homs = naive_homs(P, B)
    ks = naive_homs(Cobj, exp.obj)
    assert len(homs) == len(ks)
    for h in homs:
        h = FuzzyMorphism(P, B, h)
        assert uncurry(curry(h, Cobj, A, exp), A, exp) == h
    ev = evaluation(exp)
    validate_fuzzy_morphism(ev.components, ev.source, ev.target)


def test_postcompose_is_natural():
    rng = random.Random(3)
    G = build_schema("graph")
    A = random_presheaf(G, C3, rng, max_carrier=2)
    B = random_presheaf(G, C3, rng, max_carrier=2)
    B2 = random_presheaf(G, C3, rng, max_carrier=2)
    g = None
    for _ in range(20):
        g = random_hom(B, B2, rng)
        if g is not None:
            break
        B2 = random_presheaf(G, C3, rng, max_carrier=2)
    exp = exponential_object(A, B)
    m, exp2 = postcompose(g, exp)
    validate_fuzzy_morphism(m.components, m.source, m.target)
    assert m.target == exp2.obj


def test_curry_rejects_wrong_source():
    A = fset({"a": "1"})
    exp = exponential_object(A, A)
    wrong = validate_fuzzy_morphism({"*": {"a": "a"}}, A, A)
    with pytest.raises(ObjectMismatch):
        curry(wrong, A, fset({"z": "1", "y": "1"}), exp)


def test_terminal_schema_sizes():
    for n, k in itertools.product(range(3), range(3)):
        A = fset({f"a{j}": "1" for j in range(n)})
        B = fset({f"b{j}": "1" for j in range(k)})
        assert len(exponential_object(A, B).obj.carrier("*")) == k ** n
