"""Seeded random instances and small exhaustive families.

Random presheaves are quotients of coproducts of representables, so they
are functorial over any finite category; randomness only picks how many
representables to glue and which elements to identify.
"""

from __future__ import annotations

import itertools
import random

from .category import FiniteCategory, build_schema
from .lattice import HeytingAlgebra, chain3
from .limits import UnionFind
from .presheaf import (
    FuzzyMorphism,
    FuzzyPresheaf,
    Presheaf,
    Subobject,
    enumerate_homs,
    make_fuzzy,
    make_subobject,
    validate_presheaf,
    yoneda,
)


def _labels(C, labels):
    if isinstance(labels, HeytingAlgebra):
        return {i: labels for i in C.objects}
    return dict(labels)


def _prefix(obj: str) -> str:
    return obj.lower()


def _congruence(C: FiniteCategory, elements, act, merges):
    """Smallest congruence containing ``merges``; returns per-object union-finds."""
    ufs = {i: UnionFind(elements[i]) for i in C.objects}
    pending = list(merges)
    outs = {i: C.out_morphisms(i, include_identity=False) for i in C.objects}
    while pending:
        i, a, b = pending.pop()
        if ufs[i].find(a) == ufs[i].find(b):
            continue
        ufs[i].union(a, b)
        for m in outs[i]:
            pending.append((C.cod(m), act[m][a], act[m][b]))
    return ufs


def _canonical(C, elements, act, ufs):
    """Collapse classes and rename them ``<obj><k>`` in a stable order."""
    names = {}
    for i in C.objects:
        reps = sorted({ufs[i].find(x) for x in elements[i]})
        idx = {r: f"{_prefix(i)}{k}" for k, r in enumerate(reps)}
        names[i] = {x: idx[ufs[i].find(x)] for x in elements[i]}
    carriers = {i: sorted(set(names[i].values())) for i in C.objects}
    actions = {
        m: {names[C.dom(m)][x]: names[C.cod(m)][y] for x, y in act[m].items()} for m in C.morphisms
    }
    return carriers, actions, names


def random_presheaf(C: FiniteCategory, labels, rng: random.Random, max_carrier: int = 3,
                    membership: bool = True) -> FuzzyPresheaf:
    """A random fuzzy presheaf with at most ``max_carrier`` elements per object."""
    labels = _labels(C, labels)
    elements = {i: [] for i in C.objects}
    act = {m: {} for m in C.morphisms}
    for i in C.objects:
        for k in range(rng.randint(0, max_carrier)):
            Y = yoneda(C, i)
            tag = f"{i}:{k}:"
            for j in C.objects:
                elements[j] += [tag + x for x in Y.carrier(j)]
            for m in C.morphisms:
                act[m].update({tag + x: tag + y for x, y in Y.actions[m].items()})
    merges = []
    for i in C.objects:
        els = elements[i]
        for _ in range(rng.randint(0, max(0, len(els) - 1))):
            merges.append((i, rng.choice(els), rng.choice(els)))
    ufs = _congruence(C, elements, act, merges)
    while True:
        over = [i for i in C.objects if len({ufs[i].find(x) for x in elements[i]}) > max_carrier]
        if not over:
            break
        i = over[0]
        reps = sorted({ufs[i].find(x) for x in elements[i]})
        a, b = rng.sample(reps, 2)
        ufs = _congruence(C, elements, act, [(i, a, b)] + [(j, x, ufs[j].find(x)) for j in C.objects for x in elements[j]])
    carriers, actions, _ = _canonical(C, elements, act, ufs)
    shape = validate_presheaf(C, carriers, actions)
    mu = {
        i: {x: (rng.choice(labels[i].elements) if membership else labels[i].top) for x in carriers[i]}
        for i in C.objects
    }
    return make_fuzzy(shape, labels, mu)


def random_over(D: FuzzyPresheaf, rng: random.Random, copies: int = 2, keep: float = 0.7):
    """A random ``H`` with a morphism ``H → D``.

    ``H`` is a sub-presheaf of ``D × (k copies of 1)`` with memberships
    lowered at random.
    """
    C = D.category
    k = rng.randint(1, copies)
    chosen = {i: set() for i in C.objects}
    for i in C.objects:
        for d in D.carrier(i):
            for c in range(k):
                if rng.random() < keep:
                    chosen[i].add((d, c))
    changed = True
    while changed:
        changed = False
        for m in C.non_identity():
            dom, cod = C.morphisms[m]
            for d, c in sorted(chosen[dom]):
                img = (D.act(m, d), c)
                if img not in chosen[cod]:
                    chosen[cod].add(img)
                    changed = True

    def name(d, c):
        return f"{d}#{c}"

    carriers = {i: [name(d, c) for d, c in sorted(chosen[i])] for i in C.objects}
    actions = {m: {name(d, c): name(D.act(m, d), c) for d, c in chosen[dom]} for m, (dom, _) in C.morphisms.items()}
    membership = {}
    for i in C.objects:
        L = D.L(i)
        membership[i] = {}
        for d, c in sorted(chosen[i]):
            membership[i][name(d, c)] = rng.choice(L.downset(D.mu(i, d)))
    H = make_fuzzy(Presheaf(C, carriers, actions), D.labels, membership)
    return H, FuzzyMorphism(H, D, {i: {name(d, c): d for d, c in chosen[i]} for i in C.objects})


def random_under(A: FuzzyPresheaf, rng: random.Random, max_extra: int = 2, raise_prob: float = 0.3):
    """A random ``B`` with a morphism ``A → B``: glue extra representables onto
    ``A``, identify some elements and raise some memberships."""
    C = A.category
    elements = {i: [f"a:{x}" for x in A.carrier(i)] for i in C.objects}
    act = {m: {f"a:{x}": f"a:{y}" for x, y in A.shape.actions[m].items()} for m in C.morphisms}
    for k in range(rng.randint(0, max_extra)):
        i = rng.choice(C.objects)
        Y = yoneda(C, i)
        tag = f"y{k}:"
        for j in C.objects:
            elements[j] += [tag + x for x in Y.carrier(j)]
        for m in C.morphisms:
            act[m].update({tag + x: tag + y for x, y in Y.actions[m].items()})
    merges = []
    for i in C.objects:
        els = elements[i]
        if len(els) > 1:
            for _ in range(rng.randint(0, len(els) // 2)):
                merges.append((i, rng.choice(els), rng.choice(els)))
    ufs = _congruence(C, elements, act, merges)
    carriers, actions, names = _canonical(C, elements, act, ufs)
    shape = validate_presheaf(C, carriers, actions)
    mu = {}
    for i in C.objects:
        L = A.L(i)
        mu[i] = {}
        for x in carriers[i]:
            pre = [A.mu(i, a[2:]) for a in elements[i] if a.startswith("a:") and names[i][a] == x]
            base = L.join_all(pre)
            if not pre or rng.random() < raise_prob:
                above = [v for v in L.elements if L.leq(base, v)]
                base = rng.choice(above)
            mu[i][x] = base
    B = make_fuzzy(shape, A.labels, mu)
    f = FuzzyMorphism(A, B, {i: {x: names[i][f"a:{x}"] for x in A.carrier(i)} for i in C.objects})
    return B, f


def random_hom(A: FuzzyPresheaf, B: FuzzyPresheaf, rng: random.Random, budget=None):
    homs = list(enumerate_homs(A, B, budget=budget))
    if not homs:
        return None
    return FuzzyMorphism(A, B, rng.choice(homs))


def random_subobject(B: FuzzyPresheaf, rng: random.Random, regular: bool = True, keep: float = 0.5) -> Subobject:
    C = B.category
    subset = {i: {x for x in B.carrier(i) if rng.random() < keep} for i in C.objects}
    changed = True
    while changed:
        changed = False
        for m in C.non_identity():
            d, c = C.morphisms[m]
            for x in sorted(subset[d]):
                y = B.act(m, x)
                if y not in subset[c]:
                    subset[c].add(y)
                    changed = True
    membership = None
    if not regular:
        membership = {
            i: {x: rng.choice(B.L(i).downset(B.mu(i, x))) for x in sorted(subset[i])} for i in C.objects
        }
    return make_subobject(B, subset, membership)


def all_subobjects(B: FuzzyPresheaf, regular: bool = True):
    """Every action-closed subset of ``B`` (regular memberships)."""
    C = B.category
    slots = [(i, x) for i in C.objects for x in B.carrier(i)]
    for bits in itertools.product((False, True), repeat=len(slots)):
        subset = {i: set() for i in C.objects}
        for (i, x), b in zip(slots, bits):
            if b:
                subset[i].add(x)
        if all(B.act(m, x) in subset[C.cod(m)] for m in C.non_identity() for x in subset[C.dom(m)]):
            yield make_subobject(B, subset)


# small exhaustive graph families ----------------------------------------


def small_graphs(max_vertices: int = 2, max_edges: int = 2):
    """Directed multigraphs up to vertex relabelling, as (vertices, edge list)."""
    seen = set()
    for n in range(max_vertices + 1):
        pairs = list(itertools.product(range(n), repeat=2))
        for size in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(pairs, size):
                key = min(
                    tuple(sorted((perm[a], perm[b]) for a, b in combo))
                    for perm in itertools.permutations(range(n))
                ) if n else ()
                if (n, key) in seen:
                    continue
                seen.add((n, key))
                yield n, list(key)


def graph_presheaf(n: int, edges, labels, vertex_mu=None, edge_mu=None, C=None) -> FuzzyPresheaf:
    C = C or build_schema("graph")
    labels = _labels(C, labels)
    carriers = {"V": [f"v{k}" for k in range(n)], "E": [f"e{k}" for k in range(len(edges))]}
    actions = {
        "s": {f"e{k}": f"v{a}" for k, (a, _) in enumerate(edges)},
        "t": {f"e{k}": f"v{b}" for k, (_, b) in enumerate(edges)},
    }
    shape = validate_presheaf(C, carriers, actions)
    mu = {
        "V": {v: (vertex_mu[k] if vertex_mu else labels["V"].top) for k, v in enumerate(carriers["V"])},
        "E": {e: (edge_mu[k] if edge_mu else labels["E"].top) for k, e in enumerate(carriers["E"])},
    }
    return make_fuzzy(shape, labels, mu)


def default_labels():
    return chain3()
