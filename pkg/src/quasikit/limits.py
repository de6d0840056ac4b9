"""Finite limits and colimits of fuzzy presheaves.

Carriers are computed pointwise as in Set.  A limit element gets the meet of
the memberships of its components, a colimit class gets the join over its
members.  Element names are deterministic: pairs are ``(a|b)``, coproduct
injections tag elements ``(1|a)`` / ``(2|b)``, quotient classes are written
``{m1,m2,...}`` over the sorted member names.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .budget import as_budget
from .category import FiniteCategory
from .errors import (
    ActionNotWellDefined,
    BadParams,
    NotCommutative,
    ObjectMismatch,
    QuasikitError,
    UnsupportedKind,
)
from .lattice import HeytingAlgebra
from .presheaf import (
    FuzzyMorphism,
    FuzzyPresheaf,
    Presheaf,
    class_name,
    compose,
    enumerate_homs,
    generic_element,
    is_iso,
    make_fuzzy,
    pair_name,
    require_same_labels,
    validate_fuzzy_morphism,
)

LIMIT_KINDS = ("terminal", "product", "pullback", "equalizer")
COLIMIT_KINDS = ("initial", "coproduct", "pushout", "coequalizer")


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def _labels_for(C: FiniteCategory, labels) -> dict:
    if isinstance(labels, HeytingAlgebra):
        return {i: labels for i in C.objects}
    return dict(labels)


# extremal objects --------------------------------------------------------


def terminal(C: FiniteCategory, labels, name: str = "*") -> FuzzyPresheaf:
    """One element per object, full membership."""
    labels = _labels_for(C, labels)
    shape = Presheaf(C, {i: [name] for i in C.objects}, {m: {name: name} for m in C.morphisms})
    return make_fuzzy(shape, labels, {i: {name: labels[i].top} for i in C.objects})


def initial(C: FiniteCategory, labels) -> FuzzyPresheaf:
    labels = _labels_for(C, labels)
    shape = Presheaf(C, {i: [] for i in C.objects}, {m: {} for m in C.morphisms})
    return make_fuzzy(shape, labels, {i: {} for i in C.objects})


def extremal(kind: str, C: FiniteCategory, labels) -> FuzzyPresheaf:
    if kind == "terminal":
        return terminal(C, labels)
    if kind == "initial":
        return initial(C, labels)
    raise UnsupportedKind(f"extremal kind must be terminal or initial, not {kind!r}")


def to_terminal(A: FuzzyPresheaf, T: FuzzyPresheaf | None = None) -> FuzzyMorphism:
    T = T or terminal(A.category, A.labels)
    return FuzzyMorphism(A, T, {i: {x: T.carrier(i)[0] for x in A.carrier(i)} for i in A.category.objects})


def from_initial(A: FuzzyPresheaf, O: FuzzyPresheaf | None = None) -> FuzzyMorphism:
    O = O or initial(A.category, A.labels)
    return FuzzyMorphism(O, A, {i: {} for i in A.category.objects})


# limits ------------------------------------------------------------------


def pullback(f: FuzzyMorphism, g: FuzzyMorphism):
    """Pullback of the cospan ``B --f--> D <--g-- C``.

    Returns ``(P, p1, p2)`` with ``P(i) = {(b|c) : f b = g c}`` and membership
    ``α_B(b) ∧ α_C(c)``.
    """
    B, Cc = f.source, g.source
    require_same_labels(B, Cc, f.target, g.target)
    if f.target != g.target:
        raise ObjectMismatch("pullback needs a cospan with a common codomain")
    C = B.category
    carriers, mu, back = {}, {}, {}
    for i in C.objects:
        L = B.L(i)
        by_image: dict = {}
        for c in Cc.carrier(i):
            by_image.setdefault(g(i, c), []).append(c)
        carriers[i], mu[i] = [], {}
        for b in B.carrier(i):
            for c in by_image.get(f(i, b), ()):
                p = pair_name(b, c)
                carriers[i].append(p)
                mu[i][p] = L.meet(B.mu(i, b), Cc.mu(i, c))
                back[p] = (b, c)
    actions = {
        m: {p: pair_name(B.act(m, back[p][0]), Cc.act(m, back[p][1])) for p in carriers[C.dom(m)]}
        for m in C.morphisms
    }
    P = make_fuzzy(Presheaf(C, carriers, actions), B.labels, mu)
    p1 = FuzzyMorphism(P, B, {i: {p: back[p][0] for p in carriers[i]} for i in C.objects})
    p2 = FuzzyMorphism(P, Cc, {i: {p: back[p][1] for p in carriers[i]} for i in C.objects})
    return P, p1, p2


def binary_product(A: FuzzyPresheaf, B: FuzzyPresheaf):
    """``(A × B, π1, π2)``."""
    T = terminal(A.category, A.labels)
    return pullback(to_terminal(A, T), to_terminal(B, T))


def equalizer(f: FuzzyMorphism, g: FuzzyMorphism):
    """Equalizer of a parallel pair; returns ``(E, e)`` with ``e`` a regular mono."""
    require_same_labels(f.source, g.source, f.target, g.target)
    if f.source != g.source or f.target != g.target:
        raise ObjectMismatch("equalizer needs a parallel pair")
    A = f.source
    C = A.category
    carriers = {i: [x for x in A.carrier(i) if f(i, x) == g(i, x)] for i in C.objects}
    actions = {m: {x: A.act(m, x) for x in carriers[C.dom(m)]} for m in C.morphisms}
    mu = {i: {x: A.mu(i, x) for x in carriers[i]} for i in C.objects}
    E = make_fuzzy(Presheaf(C, carriers, actions), A.labels, mu)
    e = FuzzyMorphism(E, A, {i: {x: x for x in carriers[i]} for i in C.objects})
    return E, e


# colimits ----------------------------------------------------------------


def _tagged(tag: str, x: str) -> str:
    return pair_name(tag, x)


def _quotient(C: FiniteCategory, labels, elements, act, mu, uf_by_obj):
    """Quotient a presheaf given by raw tables along per-object union-finds.

    Returns ``(Q, cls)`` where ``cls[i][x]`` is the class name of ``x``.
    """
    cls, carriers, membership = {}, {}, {}
    for i in C.objects:
        uf = uf_by_obj[i]
        cls[i] = {}
        carriers[i] = []
        membership[i] = {}
        L = labels[i]
        for members in uf.classes():
            name = class_name(members)
            carriers[i].append(name)
            membership[i][name] = L.join_all(mu[i][x] for x in members)
            for x in members:
                cls[i][x] = name
    actions = {}
    for m in C.morphisms:
        d, c = C.morphisms[m]
        table = {}
        for x in elements[d]:
            y = cls[c][act[m][x]]
            k = cls[d][x]
            if table.setdefault(k, y) != y:
                raise ActionNotWellDefined(f"action of {m!r} is not well defined on class {k}")
        actions[m] = table
    Q = make_fuzzy(Presheaf(C, carriers, actions), labels, membership)
    return Q, cls


def pushout(f: FuzzyMorphism, g: FuzzyMorphism):
    """Pushout of the span ``B <--f-- A --g--> C``.

    ``B + C`` is quotiented by ``f a ~ g a`` with union-find; a class carries
    the join of its members' memberships.  Returns ``(Q, i1, i2)``.
    """
    A, B, Cc = f.source, f.target, g.target
    require_same_labels(B, Cc, f.source, g.source)
    if f.source != g.source:
        raise ObjectMismatch("pushout needs a span with a common domain")
    C = A.category
    elements, act, mu, ufs = {}, {}, {}, {}
    for i in C.objects:
        elements[i] = [_tagged("1", b) for b in B.carrier(i)] + [_tagged("2", c) for c in Cc.carrier(i)]
        mu[i] = {_tagged("1", b): B.mu(i, b) for b in B.carrier(i)}
        mu[i].update({_tagged("2", c): Cc.mu(i, c) for c in Cc.carrier(i)})
        uf = UnionFind(elements[i])
        for a in A.carrier(i):
            uf.union(_tagged("1", f(i, a)), _tagged("2", g(i, a)))
        ufs[i] = uf
    for m in C.morphisms:
        d = C.dom(m)
        act[m] = {_tagged("1", b): _tagged("1", B.act(m, b)) for b in B.carrier(d)}
        act[m].update({_tagged("2", c): _tagged("2", Cc.act(m, c)) for c in Cc.carrier(d)})
    Q, cls = _quotient(C, B.labels, elements, act, mu, ufs)
    i1 = FuzzyMorphism(B, Q, {i: {b: cls[i][_tagged("1", b)] for b in B.carrier(i)} for i in C.objects})
    i2 = FuzzyMorphism(Cc, Q, {i: {c: cls[i][_tagged("2", c)] for c in Cc.carrier(i)} for i in C.objects})
    return Q, i1, i2


def binary_coproduct(A: FuzzyPresheaf, B: FuzzyPresheaf):
    """``(A + B, ι1, ι2)``; elements are ``{(1|a)}`` and ``{(2|b)}``."""
    O = initial(A.category, A.labels)
    return pushout(from_initial(A, O), from_initial(B, O))


def coequalizer(f: FuzzyMorphism, g: FuzzyMorphism):
    """Coequalizer of a parallel pair; returns ``(Q, q)``."""
    require_same_labels(f.source, g.source, f.target, g.target)
    if f.source != g.source or f.target != g.target:
        raise ObjectMismatch("coequalizer needs a parallel pair")
    A, B = f.source, f.target
    C = A.category
    elements = {i: list(B.carrier(i)) for i in C.objects}
    ufs = {}
    for i in C.objects:
        uf = UnionFind(elements[i])
        for a in A.carrier(i):
            uf.union(f(i, a), g(i, a))
        ufs[i] = uf
    Q, cls = _quotient(C, B.labels, elements, B.shape.actions, B.membership, ufs)
    q = FuzzyMorphism(B, Q, {i: dict(cls[i]) for i in C.objects})
    return Q, q


# fast decisions ----------------------------------------------------------


def _try_morphism(components, source, target):
    try:
        return validate_fuzzy_morphism(components, source, target)
    except Exception:
        return None


def commutes(h1: FuzzyMorphism, h2: FuzzyMorphism) -> bool:
    return h1.components == h2.components


def pullback_mediator(f, g, q1: FuzzyMorphism, q2: FuzzyMorphism, P=None):
    """The map ``X → B ×_D C`` induced by a commuting pair ``q1, q2``."""
    if P is None:
        P = pullback(f, g)[0]
    X = q1.source
    comps = {i: {x: pair_name(q1(i, x), q2(i, x)) for x in X.carrier(i)} for i in X.category.objects}
    return validate_fuzzy_morphism(comps, X, P)


def pushout_mediator(f, g, k1: FuzzyMorphism, k2: FuzzyMorphism, Q=None, i1=None, i2=None):
    """The map ``B +_A C → X`` induced by a commuting pair ``k1, k2``."""
    if Q is None:
        Q, i1, i2 = pushout(f, g)
    X = k1.target
    comps: dict = {i: {} for i in Q.category.objects}
    for inj, k in ((i1, k1), (i2, k2)):
        for i, comp in inj.components.items():
            for x, q in comp.items():
                y = k(i, x)
                if comps[i].setdefault(q, y) != y:
                    raise NotCommutative("cocone legs disagree on a pushout class")
    return validate_fuzzy_morphism(comps, Q, X)


def is_pullback(f, g, p1: FuzzyMorphism, p2: FuzzyMorphism) -> bool:
    """Decide whether ``(p1, p2)`` is a pullback of ``(f, g)``.

    The square must commute and the comparison map into the canonical
    pullback must be an isomorphism.
    """
    if not commutes(compose(f, p1), compose(g, p2)):
        return False
    P = pullback(f, g)[0]
    u = _try_morphism(
        {i: {x: pair_name(p1(i, x), p2(i, x)) for x in p1.source.carrier(i)} for i in P.category.objects},
        p1.source,
        P,
    )
    return u is not None and is_iso(u)


def is_pushout(f, g, i1: FuzzyMorphism, i2: FuzzyMorphism) -> bool:
    """Decide whether ``(i1, i2)`` is a pushout of ``(f, g)``."""
    if not commutes(compose(i1, f), compose(i2, g)):
        return False
    Q, j1, j2 = pushout(f, g)
    try:
        v = pushout_mediator(f, g, i1, i2, Q, j1, j2)
    except Exception:
        return False
    return is_iso(v)


# brute-force universal property -----------------------------------------


@dataclass
class UniversalReport:
    kind: str
    exists: bool = True
    unique: bool = True
    explored: int = 0
    tested: int = 0
    counterexample: str | None = None
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.exists and self.unique

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "exists": self.exists,
            "unique": self.unique,
            "explored": self.explored,
            "tested": self.tested,
            "counterexample": self.counterexample,
        }


def _sig(components) -> tuple:
    return tuple((i, tuple(sorted(c.items()))) for i, c in sorted(components.items()))


def _compose_raw(g_comps, f_comps) -> dict:
    return {i: {x: g_comps[i][y] for x, y in c.items()} for i, c in f_comps.items()}


def _diagram_shape(kind: str, diagram):
    """Objects and arrows of the diagram as index lists.

    Returns ``(objects, arrows)`` where an arrow is ``(src, tgt, morphism)``.
    """
    if kind in ("terminal", "initial"):
        return [], []
    if kind in ("product", "coproduct"):
        A, B = diagram
        return [A, B], []
    f, g = diagram
    if kind == "pullback":
        if f.target != g.target:
            raise ObjectMismatch("pullback diagram must be a cospan")
        return [f.source, g.source, f.target], [(0, 2, f), (1, 2, g)]
    if kind == "pushout":
        if f.source != g.source:
            raise ObjectMismatch("pushout diagram must be a span")
        return [f.source, f.target, g.target], [(0, 1, f), (0, 2, g)]
    if kind in ("equalizer", "coequalizer"):
        if f.source != g.source or f.target != g.target:
            raise ObjectMismatch("diagram must be a parallel pair")
        return [f.source, f.target], [(0, 1, f), (0, 1, g)]
    raise UnsupportedKind(f"unknown (co)limit kind {kind!r}")


def _legs_for(kind, objects, legs):
    """Expand user legs to one leg per diagram object."""
    if kind in ("terminal", "initial"):
        return []
    if kind in ("product", "coproduct"):
        return list(legs)
    if kind == "pullback":
        p1, p2 = legs
        return [p1, p2, None]
    if kind == "pushout":
        i1, i2 = legs
        return [None, i1, i2]
    (e,) = legs if isinstance(legs, (list, tuple)) else (legs,)
    return [e, None] if kind == "equalizer" else [None, e]


def _cone_ok(arrows, cone, limit: bool) -> bool:
    for s, t, h in arrows:
        if limit:
            if _compose_raw(h.components, cone[s]) != cone[t]:
                return False
        else:
            if _compose_raw(cone[t], h.components) != cone[s]:
                return False
    return True


def _complete_cone(kind, arrows, partial, limit: bool):
    """Fill in legs determined by the diagram (e.g. to the apex of a cospan)."""
    cone = list(partial)
    for s, t, h in arrows:
        if limit and cone[t] is None and cone[s] is not None:
            cone[t] = _compose_raw(h.components, cone[s])
        if not limit and cone[s] is None and cone[t] is not None:
            cone[s] = _compose_raw(cone[t], h.components)
    return cone


def limit_probes(C: FiniteCategory, labels) -> list[FuzzyPresheaf]:
    """Generic elements ``y(i)`` at every level: they detect carrier and membership."""
    labels = _labels_for(C, labels)
    out = []
    for i in C.objects:
        for ell in labels[i].elements:
            out.append(generic_element(C, i, labels, ell))
    out.append(terminal(C, labels))
    return out


def colimit_probes(C: FiniteCategory, labels) -> list[FuzzyPresheaf]:
    """Copies of the classifier with the maximal sieve at ``i`` lowered to each level."""
    from .classifier import build_classifier, maximal_sieve

    labels = _labels_for(C, labels)
    Omega, _ = build_classifier(C, labels)
    out = []
    for i in C.objects:
        top = maximal_sieve(C, i)
        for ell in labels[i].elements:
            mu = {j: dict(Omega.membership[j]) for j in C.objects}
            mu[i][top] = ell
            out.append(Omega.with_membership(mu))
    out.append(terminal(C, labels))
    return out


def verify_universal(kind: str, diagram, apex: FuzzyPresheaf, legs=(), budget=None, probes=None) -> UniversalReport:
    """Brute-force check of a candidate (co)limit against a finite probe family.

    For every probe ``X`` all competing (co)cones with vertex ``X`` are
    enumerated and the mediators ``X → apex`` (resp. ``apex → X``) counted;
    the report fails on the first probe/(co)cone with zero or several
    mediators.  ``diagram`` is ``(C, labels)`` for terminal/initial, a pair of
    objects for (co)products and a pair of morphisms otherwise.
    """
    if kind not in LIMIT_KINDS + COLIMIT_KINDS:
        raise UnsupportedKind(f"unknown (co)limit kind {kind!r}")
    budget = as_budget(budget)
    limit = kind in LIMIT_KINDS
    report = UniversalReport(kind)
    C = apex.category
    labels = apex.labels
    objects, arrows = _diagram_shape(kind, diagram)
    for obj in objects:
        require_same_labels(apex, obj)
    cand = _legs_for(kind, objects, legs)
    for leg, obj in zip(cand, objects):
        if leg is None:
            continue
        if limit and (leg.source != apex or leg.target != obj):
            raise BadParams("limit legs must go from the apex to the diagram objects")
        if not limit and (leg.target != apex or leg.source != obj):
            raise BadParams("colimit legs must go from the diagram objects to the apex")
        try:
            validate_fuzzy_morphism(leg.components, leg.source, leg.target)
        except QuasikitError as exc:
            report.exists = False
            report.counterexample = f"candidate leg is not a morphism: {exc}"
            return report
    cand = _complete_cone(kind, arrows, [None if leg is None else leg.components for leg in cand], limit)
    if not _cone_ok(arrows, cand, limit):
        report.exists = False
        report.counterexample = "candidate legs do not form a (co)cone"
        return report

    if probes is None:
        probes = limit_probes(C, labels) if limit else colimit_probes(C, labels)

    for X in probes:
        report.tested += 1
        # mediators, indexed by the (co)cone they induce
        induced: dict = {}
        pairs = enumerate_homs(X, apex, budget=budget) if limit else enumerate_homs(apex, X, budget=budget)
        for u in pairs:
            report.explored += 1
            if limit:
                cone = tuple(_sig(_compose_raw(c, u)) for c in cand)
            else:
                cone = tuple(_sig(_compose_raw(u, c)) for c in cand)
            induced[cone] = induced.get(cone, 0) + 1

        for cone in _competing(kind, objects, arrows, X, limit, budget, report):
            key = tuple(_sig(c) for c in cone)
            n = induced.get(key, 0)
            if n != 1:
                if n == 0:
                    report.exists = False
                else:
                    report.unique = False
                report.counterexample = (
                    f"probe {X!r}: competing {'cone' if limit else 'cocone'} has {n} mediators"
                )
                return report
    return report


def _competing(kind, objects, arrows, X, limit, budget, report):
    """Enumerate (co)cones with vertex ``X`` as lists of component dicts."""
    if not objects:
        yield []
        return
    if limit:
        free = {s for s, _, _ in arrows} | (set(range(len(objects))) - {t for _, t, _ in arrows})
    else:
        free = {t for _, t, _ in arrows} | (set(range(len(objects))) - {s for s, _, _ in arrows})
    free = sorted(free)
    homs = {}
    for k in free:
        pairs = enumerate_homs(X, objects[k], budget=budget) if limit else enumerate_homs(objects[k], X, budget=budget)
        homs[k] = list(pairs)
        report.explored += len(homs[k])

    # join the free legs on their induced value at each constrained object
    def induced(k, comps):
        out = {}
        for s, t, h in arrows:
            if limit and s == k:
                out.setdefault(t, []).append(_sig(_compose_raw(h.components, comps)))
            if not limit and t == k:
                out.setdefault(s, []).append(_sig(_compose_raw(comps, h.components)))
        return out

    def rec(idx, chosen, constraint):
        if idx == len(free):
            cone = [None] * len(objects)
            for k, comps in chosen.items():
                cone[k] = comps
            cone = _complete_cone(kind, arrows, cone, limit)
            yield cone
            return
        k = free[idx]
        for comps in homs[k]:
            budget.spend()
            ind = induced(k, comps)
            new = dict(constraint)
            ok = True
            for t, sigs in ind.items():
                for s in sigs:
                    if new.setdefault(t, s) != s:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                chosen[k] = comps
                yield from rec(idx + 1, chosen, new)
                del chosen[k]

    yield from rec(0, {}, {})
