"""The regular-subobject classifier ``Ω`` of fuzzy presheaves.

``Ω(i)`` is the set of sieves on ``i``: sets of drawn morphisms out of ``i``
closed under post-composition.  Every sieve has full membership, and
``true`` picks the maximal sieve.  Only regular subobjects (membership
inherited from the ambient) are classified; a mono that strictly raises
membership has no characteristic map.
"""

from __future__ import annotations

from .budget import as_budget
from .category import FiniteCategory
from .errors import NotRegular
from .lattice import HeytingAlgebra
from .presheaf import (
    NOT_MONO,
    FuzzyMorphism,
    FuzzyPresheaf,
    Presheaf,
    Subobject,
    canonical_subobject,
    classify_mono,
    enumerate_homs,
    make_fuzzy,
    make_subobject,
)


def sieve_name(members) -> str:
    return "[" + ",".join(sorted(members)) + "]"


def principal_sieve(C: FiniteCategory, iota: str) -> frozenset:
    """All post-composites ``κ ∘ ι``."""
    return frozenset(C.compose(k, iota) for k in C.out_morphisms(C.cod(iota)))


def is_sieve(C: FiniteCategory, i: str, members) -> bool:
    members = set(members)
    for iota in members:
        if C.dom(iota) != i:
            return False
        if not principal_sieve(C, iota) <= members:
            return False
    return True


def enumerate_sieves(C: FiniteCategory, i: str, budget=None) -> list[frozenset]:
    """Every sieve on ``i``, as unions of principal sieves, sorted by name."""
    budget = as_budget(budget)
    principals = {principal_sieve(C, m) for m in C.out_morphisms(i)}
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for s in frontier:
            for p in principals:
                u = s | p
                if u not in found:
                    budget.spend()
                    found.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sieve_name(s)))


def maximal_sieve(C: FiniteCategory, i: str) -> str:
    return sieve_name(C.out_morphisms(i))


def pull_sieve(C: FiniteCategory, kappa: str, sieve) -> frozenset:
    """``Ω(κ)(S) = {λ : λ ∘ κ ∈ S}`` for drawn ``κ : i → j``."""
    j = C.cod(kappa)
    return frozenset(lam for lam in C.out_morphisms(j) if C.compose(lam, kappa) in sieve)


def build_classifier(C: FiniteCategory, labels, budget=None):
    """Return ``(Ω, true)`` where ``true : 1 → Ω`` picks maximal sieves."""
    from .limits import terminal

    if isinstance(labels, HeytingAlgebra):
        labels = {i: labels for i in C.objects}
    sieves = {i: enumerate_sieves(C, i, budget) for i in C.objects}
    carriers = {i: [sieve_name(s) for s in sieves[i]] for i in C.objects}
    actions = {}
    for m in C.morphisms:
        d = C.dom(m)
        actions[m] = {sieve_name(s): sieve_name(pull_sieve(C, m, s)) for s in sieves[d]}
    shape = Presheaf(C, carriers, actions)
    Omega = make_fuzzy(shape, labels, {i: {x: labels[i].top for x in carriers[i]} for i in C.objects})
    T = terminal(C, labels)
    true = FuzzyMorphism(T, Omega, {i: {x: maximal_sieve(C, i) for x in T.carrier(i)} for i in C.objects})
    return Omega, true


def _as_subobject(m) -> Subobject:
    if isinstance(m, Subobject):
        return m
    if classify_mono(m) == NOT_MONO:
        raise NotRegular("morphism is not a mono")
    return canonical_subobject(m)


def chi(m, Omega: FuzzyPresheaf | None = None) -> FuzzyMorphism:
    """Characteristic map ``B → Ω`` of a regular mono or regular subobject.

    ``χ_i(b) = {ι : B(ι)(b) ∈ S}``.
    """
    S = _as_subobject(m)
    if not S.regular:
        raise NotRegular("the mono lowers membership somewhere; only regular monos are classified")
    B = S.ambient
    C = B.category
    if Omega is None:
        Omega = build_classifier(C, B.labels)[0]
    comps = {}
    for i in C.objects:
        comps[i] = {}
        outs = C.out_morphisms(i)
        for b in B.carrier(i):
            comps[i][b] = sieve_name(iota for iota in outs if B.act(iota, b) in S.subset[C.cod(iota)])
    return FuzzyMorphism(B, Omega, comps)


def pullback_true(phi: FuzzyMorphism) -> Subobject:
    """The subobject ``φ*(true)``: elements sent to maximal sieves, with ambient membership."""
    B = phi.source
    C = B.category
    subset = {i: {b for b in B.carrier(i) if phi(i, b) == maximal_sieve(C, i)} for i in C.objects}
    return make_subobject(B, subset)


def classifying_maps(S: Subobject, Omega: FuzzyPresheaf | None = None, budget=None) -> list[FuzzyMorphism]:
    """Brute force: every ``φ : B → Ω`` whose pullback of ``true`` is ``S``."""
    B = S.ambient
    if Omega is None:
        Omega = build_classifier(B.category, B.labels)[0]
    out = []
    for comps in enumerate_homs(B, Omega, budget=budget):
        phi = FuzzyMorphism(B, Omega, comps)
        if pullback_true(phi) == S:
            out.append(phi)
    return out


def subobject_of_true_pullback(phi: FuzzyMorphism):
    """``(P, p)`` computed as an honest pullback of ``true`` along ``phi``."""
    from .limits import pullback

    Omega = phi.target
    _, true = build_classifier(Omega.category, Omega.labels)
    P, p1, _ = pullback(phi, true)
    return P, p1
