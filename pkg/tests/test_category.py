import itertools

import pytest

from quasikit.category import build_schema, composable_pairs, terminal_category, validate_category
from quasikit.errors import BadParams, CompositionGap, MissingIdentity, NotAssociative, UnsupportedKind

ARROW = dict(
    objects=["A", "B"],
    morphisms={"id_A": ("A", "A"), "id_B": ("B", "B"), "f": ("A", "B")},
    identities={"A": "id_A", "B": "id_B"},
    compose=[("f", "id_A", "f"), ("id_B", "f", "f"), ("id_A", "id_A", "id_A"), ("id_B", "id_B", "id_B")],
)


def _laws(C):
    for m in C.morphisms:
        assert C.compose(m, C.identity(C.dom(m))) == m
        assert C.compose(C.identity(C.cod(m)), m) == m
    for f, g, h in itertools.product(C.morphisms, repeat=3):
        if C.cod(f) == C.dom(g) and C.cod(g) == C.dom(h):
            assert C.compose(h, C.compose(g, f)) == C.compose(C.compose(h, g), f)


@pytest.mark.parametrize(
    "kind,params,size",
    [
        ("terminal", None, 1),
        ("graph", None, 4),
        ("undirected", None, 5),
        ("reflexive", None, 7),
        ("undirected-reflexive", None, 8),
        ("incidence", None, 5),
        ("ternary-connection", None, 5),
        ("hypergraph", {"m": 2, "n": 1}, 5),
        ("hypergraph", {"m": 1, "n": 0}, 3),
    ],
)
def test_schemas_are_categories(kind, params, size):
    C = build_schema(kind, params)
    assert len(C.morphisms) == size
    _laws(C)


def test_reflexive_relations():
    C = build_schema("reflexive")
    # s ∘ refl = t ∘ refl = id_V, in the drawn direction
    refl_then = {C.compose(g, "refl") for g in ("s", "t")}
    assert refl_then == {"id_V"}


def test_undirected_swap_is_involution():
    C = build_schema("undirected")
    assert C.compose("sym", "sym") == "id_E"
    assert C.compose("s", "sym") == "t"


def test_explicit_category():
    C = validate_category(**ARROW)
    assert C.dom("f") == "A" and C.cod("f") == "B"
    assert len(list(composable_pairs(C))) == 4
    assert terminal_category().objects == ("*",)


def test_explicit_category_errors():
    bad = dict(ARROW, identities={"A": "id_A"})
    with pytest.raises(MissingIdentity):
        validate_category(**bad)
    bad = dict(ARROW, compose=ARROW["compose"][:-1])
    with pytest.raises(CompositionGap):
        validate_category(**bad)
    # (a∘a)∘b = a but a∘(a∘b) = b
    objs = ["X"]
    mors = {"1": ("X", "X"), "a": ("X", "X"), "b": ("X", "X")}
    table = [("1", m, m) for m in mors] + [(m, "1", m) for m in ("a", "b")]
    table += [("a", "a", "b"), ("a", "b", "a"), ("b", "a", "a"), ("b", "b", "a")]
    with pytest.raises(NotAssociative):
        validate_category(objs, mors, {"X": "1"}, table)


def test_schema_errors():
    with pytest.raises(UnsupportedKind):
        build_schema("petri-net")
    with pytest.raises(BadParams):
        build_schema("hypergraph", {"m": 0, "n": 1})
