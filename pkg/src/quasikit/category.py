"""Finite index categories, stored as drawn.

A category here is the *drawn* shape, i.e. the opposite of the index category
``I`` of a presheaf ``I^op → Set``.  For the graph schema the drawn morphisms
are ``s, t : E → V``, and a presheaf acts covariantly along drawn arrows
(``A(s) : A(E) → A(V)``).  Consequently ``I(j, i)`` is the drawn hom-set from
``i`` to ``j`` and the representable ``y(i)`` has ``y(i)(j) = drawn Hom(i, j)``
with the action given by post-composition.
"""

from __future__ import annotations

import itertools
from collections import deque

from .errors import (
    BadParams,
    CompositionGap,
    MissingIdentity,
    NotAssociative,
    UnknownObject,
    UnsupportedKind,
)

SCHEMA_KINDS = (
    "terminal",
    "graph",
    "undirected",
    "reflexive",
    "undirected-reflexive",
    "hypergraph",
    "incidence",
    "ternary-connection",
)


class FiniteCategory:
    """A validated finite category with a fully materialized composition table.

    ``compose[(g, f)]`` is ``g ∘ f`` (first ``f``, then ``g``) and is defined
    exactly when ``cod(f) == dom(g)``.
    """

    def __init__(self, objects, morphisms, identities, compose, kind=None, params=None):
        self.objects: tuple[str, ...] = tuple(sorted(objects))
        self.morphisms: dict[str, tuple[str, str]] = dict(sorted(morphisms.items()))
        self.identities: dict[str, str] = dict(identities)
        self.compose_table: dict[tuple[str, str], str] = dict(compose)
        self.kind = kind
        self.params = dict(params or {})
        self._out = {o: [] for o in self.objects}
        for m, (d, _) in self.morphisms.items():
            self._out[d].append(m)
        self._identity_set = set(self.identities.values())

    def dom(self, m: str) -> str:
        return self.morphisms[m][0]

    def cod(self, m: str) -> str:
        return self.morphisms[m][1]

    def identity(self, obj: str) -> str:
        self._check(obj)
        return self.identities[obj]

    def is_identity(self, m: str) -> bool:
        return m in self._identity_set

    def compose(self, g: str, f: str) -> str:
        """``g ∘ f``."""
        return self.compose_table[(g, f)]

    def out_morphisms(self, obj: str, include_identity: bool = True) -> list[str]:
        self._check(obj)
        if include_identity:
            return list(self._out[obj])
        return [m for m in self._out[obj] if not self.is_identity(m)]

    def non_identity(self) -> list[str]:
        return [m for m in self.morphisms if not self.is_identity(m)]

    def _check(self, obj):
        if obj not in self._out:
            raise UnknownObject(f"{obj!r} is not an object of the category")

    def key(self):
        return (
            self.objects,
            tuple(self.morphisms.items()),
            tuple(sorted(self.identities.items())),
            tuple(sorted(self.compose_table.items())),
        )

    def __eq__(self, other):
        return isinstance(other, FiniteCategory) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = self.kind or "category"
        return f"FiniteCategory<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"


def validate_category(objects, morphisms, identities, compose, kind=None, params=None) -> FiniteCategory:
    """Check the category axioms and return a :class:`FiniteCategory`.

    ``morphisms`` maps id -> (dom, cod); ``compose`` is an iterable of
    ``(g, f, g∘f)`` triples or a dict keyed by ``(g, f)``.
    """
    objects = list(objects)
    if len(set(objects)) != len(objects):
        raise BadParams("duplicate object ids")
    obj_set = set(objects)
    morphisms = {m: tuple(dc) for m, dc in dict(morphisms).items()}
    for m, (d, c) in morphisms.items():
        if d not in obj_set or c not in obj_set:
            raise UnknownObject(f"morphism {m!r} has unknown endpoint")
    table = dict(compose) if isinstance(compose, dict) else {(g, f): gf for g, f, gf in compose}

    for o in objects:
        if o not in identities:
            raise MissingIdentity(f"object {o!r} has no identity")
        i = identities[o]
        if i not in morphisms or morphisms[i] != (o, o):
            raise MissingIdentity(f"identity {i!r} of {o!r} is not an endomorphism of {o!r}")

    for (g, f), gf in table.items():
        if f not in morphisms or g not in morphisms or gf not in morphisms:
            raise CompositionGap(f"composition entry ({g}, {f}) -> {gf} mentions an unknown morphism")
        if morphisms[f][1] != morphisms[g][0]:
            raise CompositionGap(f"entry ({g}, {f}) composes non-composable morphisms")
        if morphisms[gf] != (morphisms[f][0], morphisms[g][1]):
            raise CompositionGap(f"entry ({g}, {f}) -> {gf} has the wrong dom/cod")

    for f, (_, cf) in morphisms.items():
        for g, (dg, _) in morphisms.items():
            if cf == dg and (g, f) not in table:
                raise CompositionGap(f"composable pair ({g}, {f}) has no table entry")

    for m, (d, c) in morphisms.items():
        if table[(identities[c], m)] != m or table[(m, identities[d])] != m:
            raise MissingIdentity(f"identity law fails for {m!r}")

    for f, (_, cf) in morphisms.items():
        for g, (dg, cg) in morphisms.items():
            if cf != dg:
                continue
            gf = table[(g, f)]
            for h, (dh, _) in morphisms.items():
                if dh != cg:
                    continue
                if table[(h, gf)] != table[(table[(h, g)], f)]:
                    raise NotAssociative(f"({h}∘{g})∘{f} ≠ {h}∘({g}∘{f})")

    return FiniteCategory(objects, morphisms, identities, table, kind=kind, params=params)


def hom_set(C: FiniteCategory, j: str, i: str) -> list[str]:
    """Drawn morphisms with domain ``j`` and codomain ``i``, sorted by id."""
    C._check(j)
    C._check(i)
    return sorted(m for m in C.out_morphisms(j) if C.cod(m) == i)


def terminal_category(obj: str = "*") -> FiniteCategory:
    ident = f"id_{obj}"
    return validate_category([obj], {ident: (obj, obj)}, {obj: ident}, [(ident, ident, ident)], kind="terminal")


# schema builders --------------------------------------------------------


def _materialize(objects, generators, rules, kind, params, max_words=10_000):
    """Close generators under composition, reducing words with fixed rules.

    A word is a tuple of generator ids in application order.  ``rules`` maps a
    subword to its replacement; the rule sets used here are length-reducing
    and confluent.
    """

    def normalize(word):
        changed = True
        while changed:
            changed = False
            for lhs, rhs in rules:
                n = len(lhs)
                for k in range(len(word) - n + 1):
                    if word[k:k + n] == lhs:
                        word = word[:k] + rhs + word[k + n:]
                        changed = True
                        break
                if changed:
                    break
        return word

    def endpoints(word, start):
        cur = start
        for g in word:
            cur = generators[g][1]
        return cur

    # (start object, normal word) identifies a morphism
    seen = {(o, ()) for o in objects}
    queue = deque(sorted(seen))
    while queue:
        start, word = queue.popleft()
        here = endpoints(word, start)
        for g, (d, _) in sorted(generators.items()):
            if d != here:
                continue
            w = normalize(word + (g,))
            if (start, w) not in seen:
                seen.add((start, w))
                queue.append((start, w))
                if len(seen) > max_words:
                    raise BadParams("schema relations do not yield a finite category")

    def name(start, word):
        if not word:
            return f"id_{start}"
        return ".".join(reversed(word))

    morphisms = {}
    ident = {o: f"id_{o}" for o in objects}
    for start, word in seen:
        morphisms[name(start, word)] = (start, endpoints(word, start))
    by_name = {name(s, w): (s, w) for s, w in seen}
    table = {}
    for f, (sf, wf) in by_name.items():
        for g, (sg, wg) in by_name.items():
            if endpoints(wf, sf) != sg:
                continue
            table[(g, f)] = name(sf, normalize(wf + wg))
    return validate_category(objects, morphisms, ident, table, kind=kind, params=params)


def build_schema(kind: str, params: dict | None = None) -> FiniteCategory:
    """Build one of the graph-like schemas as a drawn finite category.

    Supported kinds: terminal, graph, undirected, reflexive,
    undirected-reflexive, hypergraph (params m ≥ 1, n ≥ 0), incidence,
    ternary-connection.
    """
    params = dict(params or {})
    if kind == "terminal":
        return terminal_category()
    if kind == "graph":
        gens = {"s": ("E", "V"), "t": ("E", "V")}
        return _materialize(["E", "V"], gens, [], kind, params)
    if kind == "undirected":
        gens = {"s": ("E", "V"), "t": ("E", "V"), "sym": ("E", "E")}
        rules = [(("sym", "sym"), ()), (("sym", "s"), ("t",)), (("sym", "t"), ("s",))]
        return _materialize(["E", "V"], gens, rules, kind, params)
    if kind == "reflexive":
        gens = {"s": ("E", "V"), "t": ("E", "V"), "refl": ("V", "E")}
        rules = [(("refl", "s"), ()), (("refl", "t"), ())]
        return _materialize(["E", "V"], gens, rules, kind, params)
    if kind == "undirected-reflexive":
        gens = {"s": ("E", "V"), "t": ("E", "V"), "sym": ("E", "E"), "refl": ("V", "E")}
        rules = [
            (("sym", "sym"), ()),
            (("sym", "s"), ("t",)),
            (("sym", "t"), ("s",)),
            (("refl", "s"), ()),
            (("refl", "t"), ()),
            (("refl", "sym"), ("refl",)),
        ]
        return _materialize(["E", "V"], gens, rules, kind, params)
    if kind == "hypergraph":
        try:
            m = int(params.get("m", 1))
            n = int(params.get("n", 0))
        except (TypeError, ValueError):
            raise BadParams("hypergraph params m, n must be integers") from None
        if m < 1 or n < 0:
            raise BadParams("hypergraph requires m ≥ 1 and n ≥ 0")
        gens = {f"s{k}": ("E", "V") for k in range(m)}
        gens.update({f"t{k}": ("E", "V") for k in range(n)})
        return _materialize(["E", "V"], gens, [], kind, {"m": m, "n": n})
    if kind == "incidence":
        gens = {"f": ("R", "E"), "g": ("R", "V")}
        return _materialize(["E", "R", "V"], gens, [], kind, params)
    if kind == "ternary-connection":
        gens = {"s": ("C", "P"), "m": ("C", "P"), "t": ("C", "P")}
        return _materialize(["C", "P"], gens, [], kind, params)
    raise UnsupportedKind(f"unknown schema kind {kind!r}")


def composable_pairs(C: FiniteCategory):
    for f, g in itertools.product(C.morphisms, repeat=2):
        if C.cod(f) == C.dom(g):
            yield g, f
