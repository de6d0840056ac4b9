"""Slices over a fixed fuzzy presheaf, via the category of elements.

Objects of the slice over ``(D, δ)`` are morphisms ``p : (A, α) → (D, δ)``.
``F`` sends such a ``p`` to the fuzzy presheaf of fibers over the category of
elements of ``D``, with labels cut down to ``L(i)_{≤ δ_i(d)}``; ``G`` goes back
by tagged disjoint union.  Slice constructions (exponentials in particular)
are computed as ``G ∘ construction ∘ F``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category import FiniteCategory, validate_category
from .errors import AnchorMismatch, ShapeMismatch
from .exponential import exponential_object
from .lattice import downset_algebra
from .limits import binary_product
from .presheaf import (
    FuzzyMorphism,
    FuzzyPresheaf,
    Presheaf,
    enumerate_homs,
    is_iso,
    make_fuzzy,
    pair_name,
    validate_fuzzy_morphism,
)


@dataclass
class SliceObject:
    total: FuzzyPresheaf
    anchor: FuzzyMorphism

    @property
    def base(self) -> FuzzyPresheaf:
        return self.anchor.target


def slice_object(anchor: FuzzyMorphism) -> SliceObject:
    return SliceObject(anchor.source, anchor)


@dataclass
class ElementsCategory:
    """``∫D`` as a drawn category, plus restricted label algebras."""

    base: FuzzyPresheaf
    category: FiniteCategory
    labels: dict
    point: dict  # object name -> (i, d)


def obj_name(i: str, d: str) -> str:
    return pair_name(i, d)


def category_of_elements(D: FuzzyPresheaf) -> ElementsCategory:
    """Objects ``(i|d)``; a drawn ``m : i → j`` yields ``(m|d) : (i|d) → (j|D(m)d)``."""
    C = D.category
    objects, point = [], {}
    for i in C.objects:
        for d in D.carrier(i):
            o = obj_name(i, d)
            objects.append(o)
            point[o] = (i, d)
    morphisms, identities, table = {}, {}, {}
    for m, (i, j) in C.morphisms.items():
        for d in D.carrier(i):
            morphisms[pair_name(m, d)] = (obj_name(i, d), obj_name(j, D.act(m, d)))
    for o, (i, d) in point.items():
        identities[o] = pair_name(C.identity(i), d)
    for (g, f), gf in C.compose_table.items():
        for d in D.carrier(C.dom(f)):
            table[(pair_name(g, D.act(f, d)), pair_name(f, d))] = pair_name(gf, d)
    cat = validate_category(objects, morphisms, identities, table, kind="elements")
    labels = {o: downset_algebra(D.L(i), D.mu(i, d)) for o, (i, d) in point.items()}
    return ElementsCategory(D, cat, labels, point)


def _check_anchor(x: SliceObject, E: ElementsCategory):
    if x.anchor.target != E.base:
        raise AnchorMismatch("slice object is anchored at a different base")


def slice_to_elements(x: SliceObject, E: ElementsCategory) -> FuzzyPresheaf:
    """``F``: the fiber ``p_i⁻¹(d)`` at ``(i|d)``, actions restricted."""
    _check_anchor(x, E)
    A, p = x.total, x.anchor
    cat = E.category
    carriers = {o: [a for a in A.carrier(i) if p(i, a) == d] for o, (i, d) in E.point.items()}
    actions = {}
    for md, (o, _) in cat.morphisms.items():
        m = _split(md)[0]
        actions[md] = {a: A.act(m, a) for a in carriers[o]}
    membership = {o: {a: A.mu(E.point[o][0], a) for a in carriers[o]} for o in cat.objects}
    return make_fuzzy(Presheaf(cat, carriers, actions), E.labels, membership)


def _split(name: str):
    """Inverse of :func:`pair_name` for names built here."""
    inner = name[1:-1]
    depth = 0
    for k, ch in enumerate(inner):
        if ch in "([{<":
            depth += 1
        elif ch in ")]}>":
            depth -= 1
        elif ch == "|" and depth == 0:
            return inner[:k], inner[k + 1:]
    raise ValueError(f"not a pair name: {name!r}")


def elements_to_slice(At: FuzzyPresheaf, E: ElementsCategory) -> SliceObject:
    """``G``: tagged union ``(d|ã)`` over fibers, anchored by the first projection."""
    if At.category != E.category:
        raise ShapeMismatch("presheaf does not live over this category of elements")
    D = E.base
    C = D.category
    carriers, membership, anchor = {}, {}, {}
    for i in C.objects:
        carriers[i], membership[i], anchor[i] = [], {}, {}
        for d in D.carrier(i):
            o = obj_name(i, d)
            for a in At.carrier(o):
                x = pair_name(d, a)
                carriers[i].append(x)
                membership[i][x] = At.mu(o, a)
                anchor[i][x] = d
    actions = {}
    for m, (i, j) in C.morphisms.items():
        actions[m] = {}
        for d in D.carrier(i):
            md = pair_name(m, d)
            d2 = D.act(m, d)
            for a in At.carrier(obj_name(i, d)):
                actions[m][pair_name(d, a)] = pair_name(d2, At.act(md, a))
    total = make_fuzzy(Presheaf(C, carriers, actions), D.labels, membership)
    p = FuzzyMorphism(total, D, anchor)
    return SliceObject(total, p)


def slice_morphism_to_elements(f: FuzzyMorphism, x: SliceObject, y: SliceObject, E: ElementsCategory, Fx=None, Fy=None):
    """``F(f)``: components restricted to fibers."""
    Fx = Fx or slice_to_elements(x, E)
    Fy = Fy or slice_to_elements(y, E)
    comps = {o: {a: f(E.point[o][0], a) for a in Fx.carrier(o)} for o in E.category.objects}
    return FuzzyMorphism(Fx, Fy, comps)


def elements_morphism_to_slice(ft: FuzzyMorphism, E: ElementsCategory, Gx=None, Gy=None):
    """``G(f̃)``: ``(d|a) ↦ (d|f̃_(i|d)(a))``."""
    Gx = Gx or elements_to_slice(ft.source, E)
    Gy = Gy or elements_to_slice(ft.target, E)
    D = E.base
    comps = {}
    for i in D.category.objects:
        comps[i] = {}
        for d in D.carrier(i):
            o = obj_name(i, d)
            for a, b in ft.components[o].items():
                comps[i][pair_name(d, a)] = pair_name(d, b)
    return FuzzyMorphism(Gx.total, Gy.total, comps)


def sigma(x: SliceObject, E: ElementsCategory) -> FuzzyMorphism:
    """``σ : GF(x) → x``, forgetting the fiber tag."""
    gfx = elements_to_slice(slice_to_elements(x, E), E)
    comps = {i: {t: _split(t)[1] for t in gfx.total.carrier(i)} for i in E.base.category.objects}
    return FuzzyMorphism(gfx.total, x.total, comps)


def tau(At: FuzzyPresheaf, E: ElementsCategory) -> FuzzyMorphism:
    """``τ : FG(Ã) → Ã``, the second projection at every ``(i|d)``."""
    fg = slice_to_elements(elements_to_slice(At, E), E)
    comps = {o: {t: _split(t)[1] for t in fg.carrier(o)} for o in E.category.objects}
    return FuzzyMorphism(fg, At, comps)


@dataclass
class EquivalenceReport:
    sigma_iso: bool
    sigma_over_base: bool
    tau_iso: bool | None
    labels_heyting: bool

    @property
    def ok(self) -> bool:
        return self.sigma_iso and self.sigma_over_base and self.tau_iso is not False and self.labels_heyting


def equivalence_witness(x: SliceObject, E: ElementsCategory | None = None) -> EquivalenceReport:
    """Check that ``σ`` and ``τ`` are valid isomorphisms for ``x`` and ``F(x)``."""
    E = E or category_of_elements(x.anchor.target)
    s = sigma(x, E)
    validate_fuzzy_morphism(s.components, s.source, s.target)
    gfx = elements_to_slice(slice_to_elements(x, E), E)
    over = all(
        gfx.anchor(i, t) == x.anchor(i, s(i, t)) for i in E.base.category.objects for t in gfx.total.carrier(i)
    )
    Fx = slice_to_elements(x, E)
    t = tau(Fx, E)
    validate_fuzzy_morphism(t.components, t.source, t.target)
    return EquivalenceReport(is_iso(s), over, is_iso(t), True)


def slice_homs(x: SliceObject, y: SliceObject, budget=None) -> list[dict]:
    """Morphisms ``f : A → B`` with ``q ∘ f = p``, as component dicts."""
    if x.anchor.target != y.anchor.target:
        raise AnchorMismatch("slice objects over different bases")
    C = x.total.category
    fixed = None
    out = []
    for comps in enumerate_homs(x.total, y.total, fixed=fixed, budget=budget):
        if all(y.anchor(i, comps[i][a]) == x.anchor(i, a) for i in C.objects for a in x.total.carrier(i)):
            out.append(comps)
    return out


def slice_product(x: SliceObject, y: SliceObject, E: ElementsCategory | None = None) -> SliceObject:
    """Pullback over the base, computed through ``F`` and ``G``."""
    E = E or category_of_elements(x.anchor.target)
    P, _, _ = binary_product(slice_to_elements(x, E), slice_to_elements(y, E))
    return elements_to_slice(P, E)


def slice_exponential(x: SliceObject, y: SliceObject, E: ElementsCategory | None = None, budget=None) -> SliceObject:
    """``y^x`` in the slice: ``G(F(y)^{F(x)})``."""
    if x.anchor.target != y.anchor.target:
        raise AnchorMismatch("slice objects over different bases")
    E = E or category_of_elements(x.anchor.target)
    exp = exponential_object(slice_to_elements(x, E), slice_to_elements(y, E), budget=budget)
    return elements_to_slice(exp.obj, E)


def identity_slice(D: FuzzyPresheaf) -> SliceObject:
    return SliceObject(D, FuzzyMorphism(D, D, {i: {x: x for x in D.carrier(i)} for i in D.category.objects}))
