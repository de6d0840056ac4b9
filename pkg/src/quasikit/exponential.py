"""Exponentials ``B^A`` of fuzzy presheaves, with curry / uncurry / eval.

An element of ``B^A`` at ``i`` is a natural transformation
``m : y(i) × A → B`` between the underlying presheaves.  Its membership is
``⋀_{a ∈ A(i)} (α_i(a) ⇒ β_i(m_i(id_i, a)))``.  A drawn ``κ : i → i'`` acts
by ``m'_k(λ, a) = m_k(λ ∘ κ, a)``.

Element names list the graph of ``m`` as ``<λ/a:b,...>`` sorted.
"""

from __future__ import annotations

from .errors import ObjectMismatch
from .limits import binary_product
from .presheaf import (
    FuzzyMorphism,
    FuzzyPresheaf,
    Presheaf,
    enumerate_homs,
    make_fuzzy,
    pair_name,
    require_same_labels,
    validate_presheaf,
    yoneda,
)


def _encode(m: dict) -> str:
    items = sorted(f"{lam}/{a}:{b}" for comp in m.values() for (lam, a), b in comp.items())
    return "<" + ",".join(items) + ">"


def _yoneda_times(A: FuzzyPresheaf, i: str) -> Presheaf:
    """``y(i) × |A|`` with elements ``(λ, a)`` as tuples."""
    C = A.category
    Y = yoneda(C, i)
    carriers = {k: [(lam, a) for lam in Y.carrier(k) for a in A.carrier(k)] for k in C.objects}
    actions = {
        m: {(lam, a): (C.compose(m, lam), A.act(m, a)) for lam, a in carriers[C.dom(m)]}
        for m in C.morphisms
    }
    return _TuplePresheaf(C, carriers, actions)


class _TuplePresheaf(Presheaf):
    """A presheaf whose elements are tuples; sorting uses their string form."""

    def __init__(self, category, carriers, actions):
        self.category = category
        self.carriers = {i: tuple(sorted(carriers[i], key=repr)) for i in category.objects}
        self.actions = {m: dict(a) for m, a in actions.items()}
        self._key = None


class Exponential:
    """``B^A`` together with the decoding of its elements.

    ``table[i][name]`` is the natural transformation as a dict
    ``k -> {(λ, a): b}``.
    """

    def __init__(self, obj: FuzzyPresheaf, A: FuzzyPresheaf, B: FuzzyPresheaf, table):
        self.obj = obj
        self.A = A
        self.B = B
        self.table = table
        self._names = {i: {_freeze(m): n for n, m in t.items()} for i, t in table.items()}

    def decode(self, i: str, name: str) -> dict:
        return self.table[i][name]

    def encode(self, i: str, m: dict) -> str:
        return self._names[i][_freeze(m)]

    def apply(self, i: str, name: str, k: str, lam: str, a: str) -> str:
        return self.table[i][name][k][(lam, a)]


def _freeze(m: dict):
    return tuple((k, tuple(sorted(c.items()))) for k, c in sorted(m.items()))


def exponential_object(A: FuzzyPresheaf, B: FuzzyPresheaf, budget=None) -> Exponential:
    """Build ``B^A`` by enumerating natural transformations ``y(i) × A → B``."""
    require_same_labels(A, B)
    C = A.category
    table: dict = {}
    carriers: dict = {}
    for i in C.objects:
        YA = _yoneda_times(A, i)
        table[i] = {}
        for comps in enumerate_homs(YA, B.shape, budget=budget):
            table[i][_encode(comps)] = comps
        carriers[i] = list(table[i])

    names = {i: {_freeze(m): n for n, m in table[i].items()} for i in C.objects}
    actions = {}
    for kappa in C.morphisms:
        i, i2 = C.morphisms[kappa]
        act = {}
        for name, m in table[i].items():
            m2 = {}
            for k in C.objects:
                m2[k] = {
                    (lam, a): m[k][(C.compose(lam, kappa), a)]
                    for lam in C.out_morphisms(i2)
                    if C.cod(lam) == k
                    for a in A.carrier(k)
                }
            act[name] = names[i2][_freeze(m2)]
        actions[kappa] = act
    shape = validate_presheaf(C, carriers, actions)

    membership = {}
    for i in C.objects:
        L = A.L(i)
        ident = C.identity(i)
        membership[i] = {
            name: L.meet_all(L.imp(A.mu(i, a), B.mu(i, m[i][(ident, a)])) for a in A.carrier(i))
            for name, m in table[i].items()
        }
    obj = make_fuzzy(shape, A.labels, membership)
    return Exponential(obj, A, B, table)


def curry(h: FuzzyMorphism, Cobj: FuzzyPresheaf, A: FuzzyPresheaf, exp: Exponential | None = None) -> FuzzyMorphism:
    """``Λh : C → B^A`` for ``h : C × A → B``; ``Λh_i(c)_k(λ, a) = h_k(C(λ)c, a)``."""
    prod = binary_product(Cobj, A)[0]
    if h.source != prod:
        raise ObjectMismatch("curry expects a morphism out of the product C × A")
    B = h.target
    exp = exp or exponential_object(A, B)
    cat = A.category
    comps = {}
    for i in cat.objects:
        comps[i] = {}
        for c in Cobj.carrier(i):
            m = {
                k: {
                    (lam, a): h(k, pair_name(Cobj.act(lam, c), a))
                    for lam in cat.out_morphisms(i)
                    if cat.cod(lam) == k
                    for a in A.carrier(k)
                }
                for k in cat.objects
            }
            comps[i][c] = exp.encode(i, m)
    return FuzzyMorphism(Cobj, exp.obj, comps)


def uncurry(k: FuzzyMorphism, A: FuzzyPresheaf, exp: Exponential) -> FuzzyMorphism:
    """``ψ(k)_i(c, a) = k_i(c)_i(id_i, a)`` as a map ``C × A → B``."""
    if k.target != exp.obj:
        raise ObjectMismatch("uncurry expects a morphism into the given exponential")
    Cobj = k.source
    prod = binary_product(Cobj, A)[0]
    cat = A.category
    comps = {}
    for i in cat.objects:
        ident = cat.identity(i)
        comps[i] = {}
        for c in Cobj.carrier(i):
            m = exp.decode(i, k(i, c))
            for a in A.carrier(i):
                comps[i][pair_name(c, a)] = m[i][(ident, a)]
    return FuzzyMorphism(prod, exp.B, comps)


def evaluation(exp: Exponential) -> FuzzyMorphism:
    """``ev : B^A × A → B``, the uncurrying of the identity."""
    E = exp.obj
    ident = FuzzyMorphism(E, E, {i: {x: x for x in E.carrier(i)} for i in E.category.objects})
    return uncurry(ident, exp.A, exp)


def postcompose(g: FuzzyMorphism, exp: Exponential, target_exp: Exponential | None = None):
    """``g^A : B^A → B'^A``, ``m ↦ g ∘ m``."""
    if g.source != exp.B:
        raise ObjectMismatch("g must start at the base of the exponential")
    target_exp = target_exp or exponential_object(exp.A, g.target)
    cat = exp.A.category
    comps = {}
    for i in cat.objects:
        comps[i] = {}
        for name, m in exp.table[i].items():
            m2 = {k: {la: g(k, b) for la, b in c.items()} for k, c in m.items()}
            comps[i][name] = target_exp.encode(i, m2)
    return FuzzyMorphism(exp.obj, target_exp.obj, comps), target_exp
