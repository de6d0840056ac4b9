"""Presheaves, fuzzy presheaves, fuzzy morphisms and subobjects.

A presheaf over a drawn category assigns a finite set of string tokens to each
object and a function ``A(m) : A(dom m) → A(cod m)`` to each drawn morphism.
A fuzzy presheaf additionally carries a membership value in ``L(i)`` for every
element of ``A(i)``; morphisms may only raise membership.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .budget import as_budget
from .category import FiniteCategory
from .errors import (
    ActionGap,
    CompositionViolated,
    IdentityViolated,
    LabelMismatch,
    MembershipDecreases,
    MembershipGap,
    NotMono,
    NotNatural,
    ObjectMismatch,
    ShapeMismatch,
    UnknownElement,
    UnknownObject,
)
from .lattice import HeytingAlgebra

NOT_MONO = "not-mono"
MONO = "mono"
REGULAR_MONO = "regular-mono"


def pair_name(a: str, b: str) -> str:
    return f"({a}|{b})"


def class_name(members) -> str:
    return "{" + ",".join(sorted(members)) + "}"


class Presheaf:
    """A functor from the drawn category to finite sets (already validated)."""

    def __init__(self, category: FiniteCategory, carriers, actions):
        self.category = category
        self.carriers: dict[str, tuple[str, ...]] = {
            i: tuple(sorted(carriers.get(i, ()))) for i in category.objects
        }
        self.actions: dict[str, dict[str, str]] = {m: dict(actions[m]) for m in category.morphisms}
        self._key = None

    def carrier(self, i: str) -> tuple[str, ...]:
        return self.carriers[i]

    def act(self, m: str, x: str) -> str:
        return self.actions[m][x]

    def size(self) -> int:
        return sum(len(c) for c in self.carriers.values())

    def key(self):
        if self._key is None:
            self._key = (
                self.category.key(),
                tuple(self.carriers.items()),
                tuple((m, tuple(sorted(a.items()))) for m, a in sorted(self.actions.items())),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, Presheaf) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        sizes = ", ".join(f"{i}:{len(c)}" for i, c in self.carriers.items())
        return f"Presheaf({sizes})"


def validate_presheaf(category: FiniteCategory, carriers: Mapping, actions: Mapping) -> Presheaf:
    """Check functoriality and return a :class:`Presheaf`.

    Actions of identities may be omitted (they default to identities) and so
    may actions of composite morphisms whose factors are all given.
    """
    C = category
    carriers = {i: list(carriers.get(i, [])) for i in C.objects}
    for i in carriers:
        if len(set(carriers[i])) != len(carriers[i]):
            raise UnknownElement(f"duplicate element in carrier of {i!r}")
    extra = set(k for k in carriers) - set(C.objects)
    if extra:
        raise UnknownObject(f"carriers given for unknown objects {sorted(extra)}")
    unknown = set(actions) - set(C.morphisms)
    if unknown:
        raise ActionGap(f"actions given for unknown morphisms {sorted(unknown)}")

    acts: dict[str, dict[str, str]] = {}
    for m, table in actions.items():
        d, c = C.morphisms[m]
        table = dict(table)
        if set(table) != set(carriers[d]):
            raise ActionGap(f"action of {m!r} is not total on {d!r}")
        cset = set(carriers[c])
        for x, y in table.items():
            if y not in cset:
                raise ActionGap(f"action of {m!r} sends {x!r} outside {c!r}")
        acts[m] = table

    for o in C.objects:
        ident = C.identities[o]
        if ident in acts:
            if any(acts[ident][x] != x for x in carriers[o]):
                raise IdentityViolated(f"action of {ident!r} is not the identity")
        else:
            acts[ident] = {x: x for x in carriers[o]}

    # derive missing composites from their factors
    progress = True
    while progress and len(acts) < len(C.morphisms):
        progress = False
        for (g, f), gf in C.compose_table.items():
            if gf not in acts and g in acts and f in acts:
                acts[gf] = {x: acts[g][acts[f][x]] for x in carriers[C.dom(f)]}
                progress = True
    missing = [m for m in C.morphisms if m not in acts]
    if missing:
        raise ActionGap(f"no action for morphisms {missing}")

    for (g, f), gf in C.compose_table.items():
        for x in carriers[C.dom(f)]:
            if acts[gf][x] != acts[g][acts[f][x]]:
                raise CompositionViolated(f"action({g}∘{f}) ≠ action({g})∘action({f}) at {x!r}")

    return Presheaf(C, carriers, acts)


class FuzzyPresheaf:
    """A presheaf with a membership map ``α_i : A(i) → L(i)`` per object."""

    def __init__(self, shape: Presheaf, labels: Mapping[str, HeytingAlgebra], membership: Mapping):
        self.shape = shape
        self.labels: dict[str, HeytingAlgebra] = {i: labels[i] for i in shape.category.objects}
        self.membership: dict[str, dict[str, str]] = {
            i: {x: membership[i][x] for x in shape.carrier(i)} for i in shape.category.objects
        }
        self._key = None

    @property
    def category(self) -> FiniteCategory:
        return self.shape.category

    def carrier(self, i: str) -> tuple[str, ...]:
        return self.shape.carriers[i]

    def act(self, m: str, x: str) -> str:
        return self.shape.actions[m][x]

    def mu(self, i: str, x: str) -> str:
        return self.membership[i][x]

    def L(self, i: str) -> HeytingAlgebra:
        return self.labels[i]

    def size(self) -> int:
        return self.shape.size()

    def with_membership(self, membership) -> "FuzzyPresheaf":
        return make_fuzzy(self.shape, self.labels, membership)

    def key(self):
        if self._key is None:
            self._key = (
                self.shape.key(),
                tuple((i, self.labels[i]) for i in sorted(self.labels)),
                tuple((i, tuple(sorted(mu.items()))) for i, mu in sorted(self.membership.items())),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, FuzzyPresheaf) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = []
        for i in self.category.objects:
            parts.append(i + ":{" + ", ".join(f"{x}@{self.membership[i][x]}" for x in self.carrier(i)) + "}")
        return "FuzzyPresheaf(" + " ".join(parts) + ")"


def make_fuzzy(shape: Presheaf, labels: Mapping[str, HeytingAlgebra], membership: Mapping) -> FuzzyPresheaf:
    """Attach labels and a total membership map to a validated presheaf."""
    for i in shape.category.objects:
        if i not in labels:
            raise LabelMismatch(f"no label algebra for object {i!r}")
        L = labels[i]
        mu = membership.get(i, {})
        if set(mu) != set(shape.carrier(i)):
            raise MembershipGap(f"membership at {i!r} is not total on the carrier")
        for x, v in mu.items():
            if v not in L:
                raise UnknownElement(f"membership {v!r} of {x!r} is not in L({i})")
    return FuzzyPresheaf(shape, labels, membership)


def fuzzy_presheaf(category, carriers, actions, labels, membership=None) -> FuzzyPresheaf:
    """Validate and build a fuzzy presheaf; ``membership=None`` means full membership."""
    shape = validate_presheaf(category, carriers, actions)
    if isinstance(labels, HeytingAlgebra):
        labels = {i: labels for i in category.objects}
    if membership is None:
        membership = {i: {x: labels[i].top for x in shape.carrier(i)} for i in category.objects}
    return make_fuzzy(shape, labels, membership)


def crisp(shape: Presheaf, labels) -> FuzzyPresheaf:
    """Give every element full membership."""
    if isinstance(labels, HeytingAlgebra):
        labels = {i: labels for i in shape.category.objects}
    return make_fuzzy(shape, labels, {i: {x: labels[i].top for x in shape.carrier(i)} for i in shape.category.objects})


def same_labels(A: FuzzyPresheaf, B: FuzzyPresheaf) -> bool:
    return A.category == B.category and all(A.labels[i] == B.labels[i] for i in A.category.objects)


def require_same_labels(*objs: FuzzyPresheaf):
    first = objs[0]
    for other in objs[1:]:
        if first.category != other.category:
            raise ShapeMismatch("objects live over different base categories")
        if not same_labels(first, other):
            raise LabelMismatch("objects carry different label families")


# morphisms ---------------------------------------------------------------


class FuzzyMorphism:
    """A natural transformation that does not decrease membership."""

    def __init__(self, source: FuzzyPresheaf, target: FuzzyPresheaf, components):
        self.source = source
        self.target = target
        self.components: dict[str, dict[str, str]] = {
            i: dict(components[i]) for i in source.category.objects
        }
        self._key = None

    def __call__(self, i: str, x: str) -> str:
        return self.components[i][x]

    def key(self):
        if self._key is None:
            self._key = (
                self.source.key(),
                self.target.key(),
                tuple((i, tuple(sorted(c.items()))) for i, c in sorted(self.components.items())),
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, FuzzyMorphism) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        body = "; ".join(
            f"{i}: " + ", ".join(f"{x}->{y}" for x, y in sorted(c.items())) for i, c in self.components.items()
        )
        return f"FuzzyMorphism({body})"


def validate_fuzzy_morphism(components, source: FuzzyPresheaf, target: FuzzyPresheaf) -> FuzzyMorphism:
    """Check totality, naturality and ``α ≤ β f``."""
    if source.category != target.category:
        raise ShapeMismatch("source and target live over different base categories")
    C = source.category
    for i in C.objects:
        if source.labels[i] != target.labels[i]:
            raise LabelMismatch(f"source and target disagree on L({i})")
    comps = {}
    for i in C.objects:
        comp = dict(components.get(i, {}))
        if set(comp) != set(source.carrier(i)):
            raise NotNatural(f"component at {i!r} is not total on the source carrier")
        tgt = set(target.carrier(i))
        for x, y in comp.items():
            if y not in tgt:
                raise NotNatural(f"component at {i!r} sends {x!r} outside the target")
        comps[i] = comp
    for m in C.non_identity():
        d, c = C.morphisms[m]
        for x in source.carrier(d):
            if comps[c][source.act(m, x)] != target.act(m, comps[d][x]):
                raise NotNatural(f"naturality square for {m!r} fails at {x!r}")
    for i in C.objects:
        L = source.labels[i]
        for x, y in comps[i].items():
            if not L.leq(source.mu(i, x), target.mu(i, y)):
                raise MembershipDecreases(
                    f"{x!r}@{source.mu(i, x)} maps to {y!r}@{target.mu(i, y)} at {i!r}"
                )
    return FuzzyMorphism(source, target, comps)


def identity(A: FuzzyPresheaf) -> FuzzyMorphism:
    return FuzzyMorphism(A, A, {i: {x: x for x in A.carrier(i)} for i in A.category.objects})


def compose(g: FuzzyMorphism, f: FuzzyMorphism) -> FuzzyMorphism:
    """``g ∘ f``."""
    if f.target is not g.source and f.target != g.source:
        raise ObjectMismatch("codomain of f is not the domain of g")
    comps = {i: {x: g.components[i][y] for x, y in f.components[i].items()} for i in f.source.category.objects}
    return FuzzyMorphism(f.source, g.target, comps)


def same_components(f: FuzzyMorphism, g: FuzzyMorphism) -> bool:
    return f.components == g.components


def classify_mono(f: FuzzyMorphism) -> str:
    """``not-mono``, ``mono`` or ``regular-mono``.

    Monos are the componentwise injective morphisms; regular ones in addition
    preserve membership exactly.
    """
    for comp in f.components.values():
        if len(set(comp.values())) != len(comp):
            return NOT_MONO
    A, B = f.source, f.target
    for i, comp in f.components.items():
        for x, y in comp.items():
            if A.mu(i, x) != B.mu(i, y):
                return MONO
    return REGULAR_MONO


def is_iso(f: FuzzyMorphism) -> bool:
    """Bijective components with membership preserved both ways."""
    for i, comp in f.components.items():
        if sorted(comp.values()) != list(f.target.carrier(i)) or len(comp) != len(f.target.carrier(i)):
            return False
    return classify_mono(f) == REGULAR_MONO


def inverse(f: FuzzyMorphism) -> FuzzyMorphism:
    if not is_iso(f):
        raise NotMono("morphism is not an isomorphism")
    return FuzzyMorphism(
        f.target, f.source, {i: {y: x for x, y in comp.items()} for i, comp in f.components.items()}
    )


# subobjects --------------------------------------------------------------


class Subobject:
    """Pointwise-subset normal form of a mono into ``ambient``."""

    def __init__(self, ambient: FuzzyPresheaf, subset, membership):
        self.ambient = ambient
        self.subset: dict[str, frozenset] = {i: frozenset(subset.get(i, ())) for i in ambient.category.objects}
        self.membership: dict[str, dict[str, str]] = {
            i: {x: membership[i][x] for x in sorted(self.subset[i])} for i in ambient.category.objects
        }
        self.regular = all(
            self.membership[i][x] == ambient.mu(i, x) for i in self.subset for x in self.subset[i]
        )

    def key(self):
        return (
            self.ambient.key(),
            tuple((i, tuple(sorted(s))) for i, s in sorted(self.subset.items())),
            tuple((i, tuple(sorted(m.items()))) for i, m in sorted(self.membership.items())),
        )

    def __eq__(self, other):
        return isinstance(other, Subobject) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = []
        for i in self.ambient.category.objects:
            parts.append(i + ":{" + ", ".join(f"{x}@{self.membership[i][x]}" for x in sorted(self.subset[i])) + "}")
        tag = "regular " if self.regular else ""
        return f"Subobject({tag}" + " ".join(parts) + ")"

    def as_presheaf(self) -> FuzzyPresheaf:
        A = self.ambient
        C = A.category
        acts = {m: {x: A.act(m, x) for x in self.subset[C.dom(m)]} for m in C.morphisms}
        shape = Presheaf(C, {i: self.subset[i] for i in C.objects}, acts)
        return FuzzyPresheaf(shape, A.labels, self.membership)

    def inclusion(self) -> FuzzyMorphism:
        S = self.as_presheaf()
        return FuzzyMorphism(S, self.ambient, {i: {x: x for x in S.carrier(i)} for i in S.category.objects})

    def leq(self, other: "Subobject") -> bool:
        """Factorization order: ``self`` factors through ``other``."""
        if self.ambient != other.ambient:
            raise ObjectMismatch("subobjects of different ambients")
        for i in self.subset:
            if not self.subset[i] <= other.subset[i]:
                return False
            L = self.ambient.L(i)
            for x in self.subset[i]:
                if not L.leq(self.membership[i][x], other.membership[i][x]):
                    return False
        return True

    def is_full(self) -> bool:
        return self.regular and all(self.subset[i] == set(self.ambient.carrier(i)) for i in self.subset)


def make_subobject(ambient: FuzzyPresheaf, subset, membership=None) -> Subobject:
    """Validate closure under the action and ``membership ≤ ambient``.

    ``membership=None`` restricts the ambient membership (a regular subobject).
    """
    C = ambient.category
    subset = {i: set(subset.get(i, ())) for i in C.objects}
    for i in C.objects:
        missing = subset[i] - set(ambient.carrier(i))
        if missing:
            raise UnknownElement(f"subset at {i!r} has elements outside the ambient: {sorted(missing)}")
    for m in C.non_identity():
        d, c = C.morphisms[m]
        for x in subset[d]:
            if ambient.act(m, x) not in subset[c]:
                raise NotNatural(f"subset is not closed under {m!r}: {x!r} ↦ {ambient.act(m, x)!r}")
    if membership is None:
        membership = {i: {x: ambient.mu(i, x) for x in subset[i]} for i in C.objects}
    for i in C.objects:
        L = ambient.L(i)
        for x in subset[i]:
            v = membership[i][x]
            if v not in L:
                raise UnknownElement(f"membership {v!r} is not in L({i})")
            if not L.leq(v, ambient.mu(i, x)):
                raise MembershipDecreases(f"subobject membership of {x!r} exceeds the ambient")
    return Subobject(ambient, subset, membership)


def full_subobject(A: FuzzyPresheaf) -> Subobject:
    return make_subobject(A, {i: A.carrier(i) for i in A.category.objects})


def empty_subobject(A: FuzzyPresheaf) -> Subobject:
    return make_subobject(A, {})


def canonical_subobject(m: FuzzyMorphism) -> Subobject:
    """The image of a mono, with membership transported along it."""
    if classify_mono(m) == NOT_MONO:
        raise NotMono("morphism is not componentwise injective")
    subset = {i: set(c.values()) for i, c in m.components.items()}
    membership = {
        i: {y: m.source.mu(i, x) for x, y in c.items()} for i, c in m.components.items()
    }
    return Subobject(m.target, subset, membership)


# hom enumeration ---------------------------------------------------------


def enumerate_homs(A, B, fixed=None, membership: bool = True, budget=None) -> Iterator[dict]:
    """Yield every natural transformation ``A → B`` as a component dict.

    Works for plain and fuzzy presheaves; with ``membership`` set and fuzzy
    arguments only membership-non-decreasing maps are produced.  ``fixed``
    pins some components in advance.  Elements are assigned with constraint
    propagation along all out-morphisms, so choosing an edge fixes its
    endpoints.
    """
    C = A.category
    if B.category != C:
        raise ShapeMismatch("source and target live over different base categories")
    budget = as_budget(budget)
    check_mu = membership and isinstance(A, FuzzyPresheaf) and isinstance(B, FuzzyPresheaf)
    if check_mu:
        require_same_labels(A, B)
    outs = {i: [(m, C.cod(m)) for m in C.out_morphisms(i, include_identity=False)] for i in C.objects}
    order = sorted(C.objects, key=lambda i: (-len(outs[i]), i))
    slots = [(i, x) for i in order for x in A.carrier(i)]
    assign: dict[str, dict[str, str]] = {i: {} for i in C.objects}
    a_act = A.actions if isinstance(A, Presheaf) else A.shape.actions
    b_act = B.actions if isinstance(B, Presheaf) else B.shape.actions

    if check_mu:
        leq = {i: A.L(i).leq for i in C.objects}
        amu, bmu = A.membership, B.membership

        def mu_ok(i, x, y):
            return leq[i](amu[i][x], bmu[i][y])
    else:

        def mu_ok(i, x, y):
            return True

    def put(i, x, y, trail):
        cur = assign[i].get(x)
        if cur is not None:
            return cur == y
        if not mu_ok(i, x, y):
            return False
        assign[i][x] = y
        trail.append((i, x))
        for m, j in outs[i]:
            x2 = a_act[m][x]
            y2 = b_act[m][y]
            cur = assign[j].get(x2)
            if cur is None:
                if not mu_ok(j, x2, y2):
                    return False
                assign[j][x2] = y2
                trail.append((j, x2))
            elif cur != y2:
                return False
        return True

    if fixed:
        trail = []
        for i, comp in fixed.items():
            for x, y in comp.items():
                if not put(i, x, y, trail):
                    return

    n = len(slots)
    targets = {i: B.carrier(i) for i in C.objects}

    def rec(k):
        while k < n and slots[k][1] in assign[slots[k][0]]:
            k += 1
        if k == n:
            yield {i: dict(c) for i, c in assign.items()}
            return
        i, x = slots[k]
        for y in targets[i]:
            budget.spend()
            trail = []
            if put(i, x, y, trail):
                yield from rec(k + 1)
            for j, z in trail:
                del assign[j][z]

    yield from rec(0)


def hom_list(A: FuzzyPresheaf, B: FuzzyPresheaf, budget=None, fixed=None) -> list[FuzzyMorphism]:
    return [FuzzyMorphism(A, B, c) for c in enumerate_homs(A, B, fixed=fixed, budget=budget)]


def count_homs(A, B, budget=None, membership=True) -> int:
    return sum(1 for _ in enumerate_homs(A, B, membership=membership, budget=budget))


# representables ----------------------------------------------------------


def yoneda(C: FiniteCategory, i: str) -> Presheaf:
    """The representable ``y(i)``: ``y(i)(j)`` is the drawn hom-set ``i → j``.

    A drawn morphism ``m : j → k`` acts by post-composition ``ι ↦ m ∘ ι``.
    """
    C._check(i)
    carriers = {j: [] for j in C.objects}
    for m in C.out_morphisms(i):
        carriers[C.cod(m)].append(m)
    actions = {
        m: {iota: C.compose(m, iota) for iota in carriers[C.dom(m)]} for m in C.morphisms
    }
    return validate_presheaf(C, carriers, actions)


def yoneda_arrow(C: FiniteCategory, m: str) -> dict:
    """Components of ``y(ι)`` for the index-category arrow given by drawn ``m``.

    For drawn ``m : i → i'`` this is the map ``y(i') → y(i)`` sending ``λ`` to
    ``λ ∘ m`` (pre-composition in drawn terms, post-composition in ``I``).
    """
    i, i2 = C.morphisms[m]
    source = yoneda(C, i2)
    return {j: {lam: C.compose(lam, m) for lam in source.carrier(j)} for j in C.objects}


def generic_element(C: FiniteCategory, i: str, labels, level: str) -> FuzzyPresheaf:
    """``y(i)`` with membership ``level`` on ``id_i`` and bottom elsewhere.

    Morphisms out of it correspond to elements of ``B(i)`` with membership at
    least ``level``.
    """
    if isinstance(labels, HeytingAlgebra):
        labels = {o: labels for o in C.objects}
    shape = yoneda(C, i)
    ident = C.identity(i)
    membership = {
        j: {x: (level if x == ident else labels[j].bottom) for x in shape.carrier(j)} for j in C.objects
    }
    return make_fuzzy(shape, labels, membership)


def rename_elements(A: FuzzyPresheaf, names: Mapping) -> tuple[FuzzyPresheaf, FuzzyMorphism]:
    """Rename elements along ``names[i][old] = new``; returns the copy and ``A → copy``."""
    C = A.category
    for i in C.objects:
        if len(set(names[i].values())) != len(A.carrier(i)):
            raise UnknownElement(f"renaming at {i!r} is not a bijection")
    carriers = {i: [names[i][x] for x in A.carrier(i)] for i in C.objects}
    actions = {
        m: {names[C.dom(m)][x]: names[C.cod(m)][y] for x, y in A.shape.actions[m].items()} for m in C.morphisms
    }
    membership = {i: {names[i][x]: A.mu(i, x) for x in A.carrier(i)} for i in C.objects}
    B = FuzzyPresheaf(Presheaf(C, carriers, actions), A.labels, membership)
    return B, FuzzyMorphism(A, B, {i: dict(names[i]) for i in C.objects})
