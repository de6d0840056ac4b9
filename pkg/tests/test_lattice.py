import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import residual
from quasikit.errors import NotLattice, NotPoset, NotResiduated, UnknownElement
from quasikit.lattice import chain, chain3, downset_algebra, one_point, powerset, subset_name, validate_heyting


def test_c3_implication_table():
    L = chain3()
    # on a chain a ⇒ b is ⊤ when a ≤ b and b otherwise
    assert L.imp("1", "1/2") == "1/2"
    assert L.imp("1/2", "0") == "0"
    assert L.imp("1/2", "1/2") == "1"
    assert L.imp("0", "0") == "1"
    assert L.imp("1", "0") == "0"
    assert (L.bottom, L.top) == ("0", "1")


def test_powerset_implication_is_complement_union():
    L = powerset(["a", "b", "c"])
    ground = {"a", "b", "c"}
    subsets = [set(c) for r in range(4) for c in itertools.combinations(sorted(ground), r)]
    for X, Y in itertools.product(subsets, repeat=2):
        assert L.imp(subset_name(X), subset_name(Y)) == subset_name((ground - X) | Y)
        assert L.meet(subset_name(X), subset_name(Y)) == subset_name(X & Y)
        assert L.join(subset_name(X), subset_name(Y)) == subset_name(X | Y)


@given(st.integers(min_value=1, max_value=7))
def test_chains_are_heyting(n):
    L = chain([f"c{k}" for k in range(n)])
    for a, b in itertools.product(L.elements, repeat=2):
        assert L.imp(a, b) == residual(L, a, b)
    assert len(L) == n


def test_full_relation_mode_matches_hasse():
    L = powerset(["x", "y"])
    again = validate_heyting(L.elements, L.order_pairs(), "full")
    assert again == L


def test_rejections():
    with pytest.raises(NotPoset):
        validate_heyting(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(NotLattice):
        # two incomparable maximal elements: no top
        validate_heyting(["0", "a", "b"], [("0", "a"), ("0", "b")])
    with pytest.raises(UnknownElement):
        validate_heyting(["0", "1"], [("0", "2")])
    with pytest.raises(NotPoset):
        validate_heyting([], [])
    with pytest.raises(NotResiduated):
        validate_heyting(["0", "a", "b", "c", "1"],
                         [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    with pytest.raises(UnknownElement):
        chain3().meet("1", "2")


def test_downset_algebra():
    L = powerset(["a", "b"])
    D = downset_algebra(L, "{a}")
    assert sorted(D.elements) == ["{a}", "{}"]
    assert D.top == "{a}"
    # implication is relative to the new top
    assert D.imp("{a}", "{}") == "{}"
    assert D.imp("{}", "{}") == "{a}"
    assert one_point().elements == ("*",)
