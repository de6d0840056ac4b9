import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import injective
from quasikit.adhesive import (
    check_cube,
    cube_from_edges,
    descent_cube,
    regular_union,
    rm_adhesivity_probe,
    stability_cube,
)
from quasikit.category import build_schema
from quasikit.errors import NotCommutative, NotRegular
from quasikit.instances import random_presheaf, random_subobject, random_under
from quasikit.lattice import chain3
from quasikit.presheaf import FuzzyMorphism, identity, make_subobject
from quasikit.serialize import load_fixture

C3 = chain3()
GRAPH = build_schema("graph")


def test_union_of_triangle_pieces():
    T = load_fixture("triangle.json")
    S1 = make_subobject(T, {"V": {"a", "b"}, "E": {"ab"}})
    S2 = make_subobject(T, {"V": {"b", "c"}, "E": {"bc"}})
    res = regular_union(S1, S2)
    assert res.h_monic and res.h_regular
    assert res.union.subset == {"V": {"a", "b", "c"}, "E": {"ab", "bc"}}
    assert res.union.membership["V"]["c"] == "1/2"


def test_union_needs_regular_inputs():
    with pytest.raises(NotRegular):
        regular_union(load_fixture("triangle-lowered.json"), load_fixture("triangle-sub.json"))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_union_is_regular_and_h_monic(seed):
    rng = random.Random(seed)
    B = random_presheaf(GRAPH, C3, rng)
    S1, S2 = random_subobject(B, rng), random_subobject(B, rng)
    res = regular_union(S1, S2)
    assert res.h_monic and res.h_regular and injective(res.mediator.components)
    assert all(res.union.subset[i] == S1.subset[i] | S2.subset[i] for i in GRAPH.objects)


def test_identity_cube_is_all_green():
    T = load_fixture("triangle.json")
    e = {name: identity(T) for name in ("ba", "bc", "ad", "cd", "fe", "fg", "eh", "gh", "fb", "ea", "gc", "hd")}
    rep = check_cube(cube_from_edges(e), oracle="both")
    assert rep.back_pullbacks and rep.bottom_pushout and rep.top_pushout and rep.front_pullbacks
    assert rep.vk_verdict is True


def test_non_commuting_cube_is_rejected():
    P = load_fixture("parallel.json")
    swap = FuzzyMorphism(P, P, {"V": {"v": "v", "w": "w"}, "E": {"e1": "e2", "e2": "e1"}})
    edges = {name: identity(P) for name in ("ba", "bc", "ad", "cd", "fe", "fg", "eh", "gh", "fb", "ea", "gc", "hd")}
    edges["ad"] = swap
    with pytest.raises(NotCommutative):
        cube_from_edges(edges)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_sampled_cubes_satisfy_vk(seed):
    rng = random.Random(seed)
    B = random_presheaf(GRAPH, C3, rng, max_carrier=2)
    m = random_subobject(B, rng).inclusion()
    _, f = random_under(m.source, rng)
    for cube in (stability_cube(m, f, rng=rng), descent_cube(m, f, rng=rng)):
        if cube is None:
            continue
        rep = check_cube(cube, oracle="both")
        assert rep.vk_verdict in (True, None)


def test_probe_report():
    rng = random.Random(1)
    B = random_presheaf(GRAPH, C3, rng)
    m = random_subobject(B, rng).inclusion()
    _, f = random_under(m.source, rng)
    rep = rm_adhesivity_probe(m, f, samples=6, seed=3)
    assert rep.ok and rep.sampled == 6 and rep.as_dict()["violations"] == 0
