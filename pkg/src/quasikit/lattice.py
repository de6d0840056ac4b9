"""Finite Heyting algebras used as membership label spaces.

Elements are opaque string tokens.  An algebra is fully tabulated when it is
built: order, meet, join and implication are stored as index tables, and the
residuation and modus ponens laws are checked exhaustively before the object
is handed out.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import NotLattice, NotPoset, NotResiduated, UnknownElement

MEET = "meet"
JOIN = "join"


class HeytingAlgebra:
    """A validated finite Heyting algebra.

    Do not call the constructor directly; use :func:`validate_heyting`,
    :func:`chain`, :func:`powerset` or :func:`downset_algebra`.
    """

    __slots__ = ("elements", "_idx", "_leq", "_meet", "_join", "_imp", "top", "bottom")

    def __init__(self, elements, leq, meet, join, imp):
        self.elements: tuple[str, ...] = tuple(elements)
        self._idx = {e: n for n, e in enumerate(self.elements)}
        self._leq = leq
        self._meet = meet
        self._join = join
        self._imp = imp
        n = len(self.elements)
        self.top = next(self.elements[a] for a in range(n) if all(leq[b][a] for b in range(n)))
        self.bottom = next(self.elements[a] for a in range(n) if all(leq[a][b] for b in range(n)))

    # lookups -------------------------------------------------------------

    def index(self, a: str) -> int:
        try:
            return self._idx[a]
        except KeyError:
            raise UnknownElement(f"{a!r} is not an element of this algebra") from None

    def __contains__(self, a) -> bool:
        return a in self._idx

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a: str, b: str) -> bool:
        return self._leq[self.index(a)][self.index(b)]

    def meet(self, a: str, b: str) -> str:
        return self.elements[self._meet[self.index(a)][self.index(b)]]

    def join(self, a: str, b: str) -> str:
        return self.elements[self._join[self.index(a)][self.index(b)]]

    def imp(self, a: str, b: str) -> str:
        """Relative pseudo-complement: the largest ``c`` with ``a ∧ c ≤ b``."""
        return self.elements[self._imp[self.index(a)][self.index(b)]]

    def aggregate(self, kind: str, subset: Iterable[str]) -> str:
        """Meet or join of an arbitrary subset; empty meet is top, empty join is bottom."""
        if kind == MEET:
            acc, op = self.top, self.meet
        elif kind == JOIN:
            acc, op = self.bottom, self.join
        else:
            raise ValueError(f"unknown aggregate kind {kind!r}")
        for x in subset:
            acc = op(acc, x)
        return acc

    def meet_all(self, subset: Iterable[str]) -> str:
        return self.aggregate(MEET, subset)

    def join_all(self, subset: Iterable[str]) -> str:
        return self.aggregate(JOIN, subset)

    def downset(self, d: str) -> list[str]:
        i = self.index(d)
        return [e for n, e in enumerate(self.elements) if self._leq[n][i]]

    # identity ------------------------------------------------------------

    def order_pairs(self) -> list[tuple[str, str]]:
        """Full order relation as sorted pairs."""
        n = len(self.elements)
        return [
            (self.elements[a], self.elements[b])
            for a in range(n)
            for b in range(n)
            if self._leq[a][b]
        ]

    def hasse_pairs(self) -> list[tuple[str, str]]:
        """Covering relation, used for compact serialization."""
        n = len(self.elements)
        lt = [[self._leq[a][b] and a != b for b in range(n)] for a in range(n)]
        out = []
        for a in range(n):
            for b in range(n):
                if lt[a][b] and not any(lt[a][c] and lt[c][b] for c in range(n)):
                    out.append((self.elements[a], self.elements[b]))
        return out

    def _key(self):
        return (self.elements, tuple(map(tuple, self._leq)))

    def __eq__(self, other) -> bool:
        return isinstance(other, HeytingAlgebra) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"HeytingAlgebra({list(self.elements)!r}, top={self.top!r}, bottom={self.bottom!r})"


def _closure(n: int, pairs: Sequence[tuple[int, int]]) -> list[list[bool]]:
    rel = [[a == b for b in range(n)] for a in range(n)]
    for a, b in pairs:
        rel[a][b] = True
    # Warshall
    for k in range(n):
        for a in range(n):
            if rel[a][k]:
                row_k = rel[k]
                row_a = rel[a]
                for b in range(n):
                    if row_k[b]:
                        row_a[b] = True
    return rel


def validate_heyting(elements: Sequence[str], order: Iterable[Sequence[str]], mode: str = "hasse") -> HeytingAlgebra:
    """Build a Heyting algebra from an element list and order pairs.

    ``mode`` is ``"hasse"`` (the reflexive-transitive closure of ``order`` is
    taken) or ``"full"`` (``order`` must already be the complete relation).
    """
    elements = list(elements)
    if not elements:
        raise NotPoset("empty element list")
    if len(set(elements)) != len(elements):
        raise NotPoset("duplicate element ids")
    if any(not isinstance(e, str) for e in elements):
        raise NotPoset("element ids must be strings")
    elements = sorted(elements)
    idx = {e: n for n, e in enumerate(elements)}
    n = len(elements)
    pairs = []
    for pair in order:
        a, b = pair
        if a not in idx or b not in idx:
            raise UnknownElement(f"order pair ({a!r}, {b!r}) mentions an unlisted element")
        pairs.append((idx[a], idx[b]))

    if mode in ("hasse", "hasse-closure"):
        leq = _closure(n, pairs)
    elif mode in ("full", "full-relation"):
        leq = [[False] * n for _ in range(n)]
        for a, b in pairs:
            leq[a][b] = True
        for a in range(n):
            if not leq[a][a]:
                raise NotPoset(f"full relation is not reflexive at {elements[a]!r}")
        for a, b, c in itertools.product(range(n), repeat=3):
            if leq[a][b] and leq[b][c] and not leq[a][c]:
                raise NotPoset(
                    f"full relation is not transitive: {elements[a]!r} ≤ {elements[b]!r} ≤ {elements[c]!r}"
                )
    else:
        raise ValueError(f"unknown closure mode {mode!r}")

    for a in range(n):
        for b in range(a + 1, n):
            if leq[a][b] and leq[b][a]:
                raise NotPoset(f"antisymmetry fails for {elements[a]!r} and {elements[b]!r}")

    def bound(a, b, lower):
        if lower:
            cands = [c for c in range(n) if leq[c][a] and leq[c][b]]
            best = [c for c in cands if all(leq[d][c] for d in cands)]
        else:
            cands = [c for c in range(n) if leq[a][c] and leq[b][c]]
            best = [c for c in cands if all(leq[c][d] for d in cands)]
        if len(best) != 1:
            what = "meet" if lower else "join"
            raise NotLattice(f"{elements[a]!r} and {elements[b]!r} have no {what}")
        return best[0]

    meet = [[bound(a, b, True) for b in range(n)] for a in range(n)]
    join = [[bound(a, b, False) for b in range(n)] for a in range(n)]

    imp = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            cands = [c for c in range(n) if leq[meet[a][c]][b]]
            best = [c for c in cands if all(leq[d][c] for d in cands)]
            if len(best) != 1:
                names = sorted(elements[c] for c in cands)
                raise NotResiduated(
                    f"no greatest c with {elements[a]!r} ∧ c ≤ {elements[b]!r}; candidates {names}"
                )
            imp[a][b] = best[0]

    # residuation and modus ponens, eagerly
    for a, b, c in itertools.product(range(n), repeat=3):
        if leq[meet[a][b]][c] != leq[a][imp[b][c]]:
            raise NotResiduated(f"residuation fails at ({elements[a]}, {elements[b]}, {elements[c]})")
    for a in range(n):
        for b in range(n):
            if meet[a][imp[a][b]] != meet[a][b]:
                raise NotResiduated(f"modus ponens fails at ({elements[a]}, {elements[b]})")

    return HeytingAlgebra(elements, leq, meet, join, imp)


def chain(names: Sequence[str]) -> HeytingAlgebra:
    """The total order ``names[0] < names[1] < ...``."""
    return validate_heyting(names, list(zip(names, names[1:])), "hasse")


def subset_name(members: Iterable[str]) -> str:
    return "{" + ",".join(sorted(members)) + "}"


def powerset(ground: Sequence[str]) -> HeytingAlgebra:
    """Subsets of ``ground`` ordered by inclusion, named ``{a,b}``."""
    ground = sorted(set(ground))
    subsets = [frozenset(c) for r in range(len(ground) + 1) for c in itertools.combinations(ground, r)]
    names = {s: subset_name(s) for s in subsets}
    order = [
        (names[s], names[s | {g}])
        for s in subsets
        for g in ground
        if g not in s
    ]
    return validate_heyting(list(names.values()), order, "hasse")


def downset_algebra(L: HeytingAlgebra, d: str) -> HeytingAlgebra:
    """The restriction of ``L`` to ``{x : x ≤ d}``, revalidated with top ``d``."""
    keep = L.downset(d)
    order = [(a, b) for a in keep for b in keep if L.leq(a, b)]
    return validate_heyting(keep, order, "full")


def one_point(name: str = "*") -> HeytingAlgebra:
    return validate_heyting([name], [], "hasse")


def chain3() -> HeytingAlgebra:
    """The three-element chain ``0 < 1/2 < 1`` used throughout the examples."""
    return chain(["0", "1/2", "1"])
