import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_homs
from quasikit.category import build_schema
from quasikit.errors import AnchorMismatch
from quasikit.instances import random_over, random_presheaf
from quasikit.lattice import chain3
from quasikit.presheaf import count_homs, is_iso
from quasikit.serialize import load_fixture
from quasikit.slice import (
    category_of_elements,
    elements_to_slice,
    equivalence_witness,
    identity_slice,
    sigma,
    slice_exponential,
    slice_homs,
    slice_object,
    slice_product,
    slice_to_elements,
    tau,
)

C3 = chain3()
GRAPH = build_schema("graph")


def test_elements_of_one_edge():
    D = load_fixture("one-edge.json")
    E = category_of_elements(D)
    assert sorted(E.category.objects) == ["(E|e)", "(V|v)", "(V|w)"]
    arrows = {m: E.category.morphisms[m] for m in E.category.non_identity()}
    # an edge element points at its source and target vertex elements
    assert arrows == {"(s|e)": ("(E|e)", "(V|v)"), "(t|e)": ("(E|e)", "(V|w)")}
    # labels are the downsets of each element's membership
    assert sorted(E.labels["(E|e)"].elements) == ["0", "1/2"]
    assert len(E.labels["(V|v)"].elements) == 3


def test_identity_slice_is_terminal_in_elements():
    D = load_fixture("triangle.json")
    E = category_of_elements(D)
    F = slice_to_elements(identity_slice(D), E)
    assert all(len(F.carrier(o)) == 1 for o in E.category.objects)
    assert all(F.mu(o, a) == E.labels[o].top for o in E.category.objects for a in F.carrier(o))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_equivalence_round_trips(seed):
    rng = random.Random(seed)
    D = random_presheaf(GRAPH, C3, rng, max_carrier=2)
    E = category_of_elements(D)
    H, h = random_over(D, rng)
    x = slice_object(h)
    rep = equivalence_witness(x, E)
    assert rep.ok
    assert is_iso(sigma(x, E))
    Fx = slice_to_elements(x, E)
    assert is_iso(tau(Fx, E))
    back = elements_to_slice(Fx, E)
    assert sum(len(back.total.carrier(i)) for i in GRAPH.objects) == sum(len(H.carrier(i)) for i in GRAPH.objects)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_hom_counts(seed):
    rng = random.Random(seed)
    D = random_presheaf(GRAPH, C3, rng, max_carrier=2)
    E = category_of_elements(D)
    (A, p), (B, q) = random_over(D, rng), random_over(D, rng)
    x, y = slice_object(p), slice_object(q)
    over = [f for f in naive_homs(A, B) if all(q(i, f[i][a]) == p(i, a) for i in GRAPH.objects for a in A.carrier(i))]
    assert len(slice_homs(x, y)) == len(over)
    assert count_homs(slice_to_elements(x, E), slice_to_elements(y, E)) == len(over)


def test_slice_product_and_exponential():
    rng = random.Random(11)
    D = random_presheaf(GRAPH, C3, rng, max_carrier=2)
    (A, p), (B, q) = random_over(D, rng), random_over(D, rng)
    x, y = slice_object(p), slice_object(q)
    P = slice_product(x, y)
    # the product over D is the pullback: pairs in a common fiber
    want = sum(1 for i in GRAPH.objects for a in A.carrier(i) for b in B.carrier(i) if p(i, a) == q(i, b))
    assert sum(len(P.total.carrier(i)) for i in GRAPH.objects) == want
    X = slice_exponential(x, y)
    assert X.anchor.target == D


def test_anchor_mismatch():
    D1, D2 = load_fixture("triangle.json"), load_fixture("path.json")
    with pytest.raises(AnchorMismatch):
        slice_homs(identity_slice(D1), identity_slice(D2))
    with pytest.raises(AnchorMismatch):
        slice_to_elements(identity_slice(D1), category_of_elements(D2))
