"""Topologies on fuzzy presheaves and the double-negation closure on fuzzy graphs.

A topology sends each subobject of ``A`` to a larger subobject of ``A``.  The
trivial one sends everything to ``A``, the discrete one is the identity, and
on (directed or undirected) fuzzy graphs ``¬¬`` keeps the vertex set, adds
every ambient edge between kept vertices and resets membership to the
ambient's.  Dense subobjects are those with full closure; separated objects
admit at most one extension of a map along a dense mono.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .budget import as_budget
from .errors import AxiomViolated, NotMono, UnsupportedSchema
from .limits import initial
from .presheaf import (
    NOT_MONO,
    FuzzyMorphism,
    FuzzyPresheaf,
    Subobject,
    canonical_subobject,
    classify_mono,
    enumerate_homs,
    fuzzy_presheaf,
    full_subobject,
    make_subobject,
)

GRAPH_KINDS = ("graph", "undirected")


def _require_graph(A: FuzzyPresheaf):
    if A.category.kind not in GRAPH_KINDS:
        raise UnsupportedSchema(f"¬¬ is implemented for graph and undirected schemas, not {A.category.kind!r}")


def not_complement(sub: Subobject) -> Subobject:
    """Largest subgraph disconnected from ``sub``, with ambient membership."""
    A = sub.ambient
    _require_graph(A)
    verts = {v for v in A.carrier("V") if v not in sub.subset["V"]}
    edges = {e for e in A.carrier("E") if A.act("s", e) in verts and A.act("t", e) in verts}
    return make_subobject(A, {"V": verts, "E": edges})


def notnot_closure(sub: Subobject) -> Subobject:
    """Subgraph induced by the vertices of ``sub``, with ambient membership."""
    A = sub.ambient
    _require_graph(A)
    verts = set(sub.subset["V"])
    edges = {e for e in A.carrier("E") if A.act("s", e) in verts and A.act("t", e) in verts}
    return make_subobject(A, {"V": verts, "E": edges})


def dense_criteria(sub: Subobject) -> tuple[bool, bool]:
    """``(all vertices present, ¬¬-closure is full)``."""
    A = sub.ambient
    _require_graph(A)
    return sub.subset["V"] == set(A.carrier("V")), notnot_closure(sub) == full_subobject(A)


def is_dense(sub: Subobject) -> bool:
    by_vertices, by_closure = dense_criteria(sub)
    if by_vertices != by_closure:
        raise AssertionError("density criteria disagree")
    return by_vertices


def pullback_subobject(S: Subobject, f: FuzzyMorphism) -> Subobject:
    """``f*S`` for ``f : B → A``: ``{b : f b ∈ S}`` with membership ``β(b) ∧ μ_S(f b)``."""
    if f.target != S.ambient:
        raise NotMono("morphism does not land in the ambient of the subobject")
    B = f.source
    subset, membership = {}, {}
    for i in B.category.objects:
        L = B.L(i)
        subset[i] = {b for b in B.carrier(i) if f(i, b) in S.subset[i]}
        membership[i] = {b: L.meet(B.mu(i, b), S.membership[i][f(i, b)]) for b in subset[i]}
    return make_subobject(B, subset, membership)


# topologies --------------------------------------------------------------


@dataclass
class TopologyImpl:
    name: str
    closure: Callable[[Subobject], Subobject]

    def __call__(self, sub: Subobject) -> Subobject:
        return self.closure(sub)


TRIVIAL = TopologyImpl("trivial", lambda sub: full_subobject(sub.ambient))
DISCRETE = TopologyImpl("discrete", lambda sub: sub)
NOTNOT = TopologyImpl("notnot-graph", notnot_closure)
TOPOLOGIES = {t.name: t for t in (TRIVIAL, DISCRETE, NOTNOT)}


@dataclass
class AxiomReport:
    topology: str
    checked: dict = field(default_factory=lambda: {k: 0 for k in ("i", "ii", "iii", "iv", "v")})

    @property
    def ok(self) -> bool:
        return True

    def as_dict(self):
        return {"topology": self.topology, "ok": True, "checked": dict(self.checked)}


def check_topology_axioms(t: TopologyImpl, samples) -> AxiomReport:
    """Check axioms (i)-(v) on sampled subobjects and morphisms.

    ``samples`` is an iterable of ``(subobjects, morphisms)`` where all
    subobjects share one ambient ``A`` and every morphism has target ``A``.
    Raises :class:`AxiomViolated` with the witness on the first failure.
    """
    rep = AxiomReport(t.name)
    for subs, maps in samples:
        closed = [t(S) for S in subs]
        for S, cS in zip(subs, closed):
            if not S.leq(cS):
                raise AxiomViolated(f"(ii) extensiveness fails for {S!r}")
            rep.checked["ii"] += 1
            if t(cS) != cS:
                raise AxiomViolated(f"(iii) idempotence fails for {S!r}")
            rep.checked["iii"] += 1
            if S.regular and not cS.regular:
                raise AxiomViolated(f"(v) closure of regular {S!r} is not regular")
            rep.checked["v"] += 1
        for (S1, c1), (S2, c2) in itertools.product(list(zip(subs, closed)), repeat=2):
            if S1.leq(S2):
                if not c1.leq(c2):
                    raise AxiomViolated(f"(i) monotonicity fails for {S1!r} ≤ {S2!r}")
                rep.checked["i"] += 1
        for f in maps:
            for S, cS in zip(subs, closed):
                if t(pullback_subobject(S, f)) != pullback_subobject(cS, f):
                    raise AxiomViolated(f"(iv) pullback stability fails for {S!r} along {f!r}")
                rep.checked["iv"] += 1
    return rep


# separatedness -----------------------------------------------------------


def parallel_groups(B: FuzzyPresheaf) -> dict:
    _require_graph(B)
    groups: dict = {}
    for e in B.carrier("E"):
        groups.setdefault((B.act("s", e), B.act("t", e)), []).append(e)
    return groups


def _graph_family(kind: str, labels, max_vertices: int, max_edges: int):
    """Small ambients ``A`` (membership ⊥) for the definitional check.

    Directed: up to ``max_edges`` edges over ordered vertex pairs.  Undirected:
    up to ``max_edges`` edge orbits, each a swapped pair or a fixed loop.
    """
    from .category import build_schema

    C = build_schema(kind)
    L = labels
    for n in range(1, max_vertices + 1):
        verts = [f"v{k}" for k in range(n)]
        if kind == "graph":
            gens = list(itertools.product(range(n), repeat=2))
        else:
            gens = [("pair", u, v) for u in range(n) for v in range(u, n)] + [("fix", v) for v in range(n)]
        for size in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(gens, size):
                carriers = {"V": verts, "E": []}
                s, t, sym = {}, {}, {}
                for k, g in enumerate(combo):
                    if kind == "graph":
                        e = f"e{k}"
                        carriers["E"].append(e)
                        s[e], t[e] = f"v{g[0]}", f"v{g[1]}"
                    elif g[0] == "pair":
                        e, e2 = f"e{k}", f"e{k}'"
                        carriers["E"] += [e, e2]
                        s[e], t[e], s[e2], t[e2] = f"v{g[1]}", f"v{g[2]}", f"v{g[2]}", f"v{g[1]}"
                        sym[e], sym[e2] = e2, e
                    else:
                        e = f"e{k}"
                        carriers["E"].append(e)
                        s[e] = t[e] = f"v{g[1]}"
                        sym[e] = e
                actions = {"s": s, "t": t}
                if kind == "undirected":
                    actions["sym"] = sym
                membership = {i: {x: L.bottom for x in carriers[i]} for i in carriers}
                yield fuzzy_presheaf(C, carriers, actions, L, membership), combo


def _dense_edge_subsets(A: FuzzyPresheaf):
    """Every dense regular subobject: all vertices plus an action-closed edge set."""
    orbits, seen = [], set()
    for e in A.carrier("E"):
        if e in seen:
            continue
        orb = {e}
        if "sym" in A.category.morphisms:
            orb.add(A.act("sym", e))
        seen |= orb
        orbits.append(orb)
    for r in range(len(orbits) + 1):
        for pick in itertools.combinations(orbits, r):
            edges = set().union(*pick) if pick else set()
            yield make_subobject(A, {"V": set(A.carrier("V")), "E": edges})


@dataclass
class SeparationReport:
    separated: bool
    explored: int = 0
    witness: str | None = None


def separated_definitional(B: FuzzyPresheaf, max_vertices: int = 3, max_edges: int = 3, budget=None) -> SeparationReport:
    """Enumerate dense monos ``A₀ ↣ A`` in the bounded family and look for two
    extensions ``A → B`` of one map ``A₀ → B``."""
    _require_graph(B)
    budget = as_budget(budget)
    rep = SeparationReport(True)
    L = B.L("E")
    for A, combo in _graph_family(B.category.kind, L, max_vertices, max_edges):
        homs = list(enumerate_homs(A, B, budget=budget))
        rep.explored += len(homs)
        for A0 in _dense_edge_subsets(A):
            groups: dict = {}
            for g in homs:
                restr = (tuple(sorted(g["V"].items())), tuple(sorted((e, g["E"][e]) for e in A0.subset["E"])))
                groups[restr] = groups.get(restr, 0) + 1
            worst = max(groups.values(), default=0)
            if worst > 1:
                rep.separated = False
                rep.witness = f"ambient {list(combo)} with dense edges {sorted(A0.subset['E'])}: {worst} extensions"
                return rep
    return rep


def is_separated(B: FuzzyPresheaf, mode: str = "criterion", max_vertices: int = 3, max_edges: int = 3, budget=None) -> bool:
    """``criterion``: no two distinct edges share (source, target).
    ``definitional``: bounded enumeration of dense monos and extensions."""
    if mode == "criterion":
        return all(len(es) == 1 for es in parallel_groups(B).values())
    if mode == "definitional":
        return separated_definitional(B, max_vertices, max_edges, budget).separated
    raise ValueError(f"unknown mode {mode!r}")


# cross-check through the slice -------------------------------------------


def negation_via_slice(sub: Subobject, budget=None) -> Subobject:
    """``¬m`` computed as the slice exponential ``(0 ↣ A)^(m)`` over ``A``."""
    from .slice import SliceObject, slice_exponential

    A = sub.ambient
    m = sub.inclusion()
    O = initial(A.category, A.labels)
    zero = FuzzyMorphism(O, A, {i: {} for i in A.category.objects})
    n = slice_exponential(SliceObject(m.source, m), SliceObject(O, zero), budget=budget)
    if classify_mono(n.anchor) == NOT_MONO:
        raise NotMono("slice exponential of subobjects is not a mono")
    return canonical_subobject(n.anchor)
