"""The glue phase of a PBPO⁺ rewrite step, and the resource-transmission demo.

A right-hand rule is a pushout square

    K --r--> R
    |t_K     |t_R
    v        v
    K' -r'-> R'

and a host interface is ``u : K → G_K`` with ``u' : G_K → K'`` such that
``u' ∘ u = t_K`` and that square is a pullback.  The step pushes out ``u``
along ``r`` to get ``G_R`` and the mediator ``w' : G_R → R'``; the resulting
commutative cube has pushout top and bottom faces.  When ``t_K`` is a
regular mono both front faces must come out as pullbacks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .adhesive import CubeReport, check_cube, cube_from_edges
from .category import build_schema
from .errors import (
    BottomNotPushout,
    FrontFaceNotPullback,
    InvalidMorphism,
    MediatorNotUnique,
    NoMatch,
    NotCommutative,
    QuasikitError,
)
from .lattice import one_point, powerset, subset_name
from .limits import is_pullback, is_pushout, pushout, pushout_mediator
from .presheaf import (
    REGULAR_MONO,
    FuzzyMorphism,
    FuzzyPresheaf,
    classify_mono,
    compose,
    fuzzy_presheaf,
    identity,
    rename_elements,
    validate_fuzzy_morphism,
)


@dataclass
class RuleRight:
    K: FuzzyPresheaf
    R: FuzzyPresheaf
    Kp: FuzzyPresheaf
    Rp: FuzzyPresheaf
    r: FuzzyMorphism
    t_K: FuzzyMorphism
    t_R: FuzzyMorphism
    r_p: FuzzyMorphism
    t_K_regular: bool


@dataclass
class HostInterface:
    G_K: FuzzyPresheaf
    u: FuzzyMorphism
    u_p: FuzzyMorphism


@dataclass
class StepResult:
    G_R: FuzzyPresheaf
    w: FuzzyMorphism
    g_R: FuzzyMorphism
    w_p: FuzzyMorphism
    cube: object
    report: CubeReport


def _checked(m: FuzzyMorphism, what: str) -> FuzzyMorphism:
    try:
        return validate_fuzzy_morphism(m.components, m.source, m.target)
    except QuasikitError as exc:
        raise InvalidMorphism(f"{what}: {exc}") from exc


def validate_rule(K, R, Kp, Rp, r, t_K, t_R, r_p) -> RuleRight:
    """Check morphisms and that the bottom square is a pushout."""
    pairs = {"r": (r, K, R), "t_K": (t_K, K, Kp), "t_R": (t_R, R, Rp), "r'": (r_p, Kp, Rp)}
    for name, (m, s, t) in pairs.items():
        if m.source != s or m.target != t:
            raise InvalidMorphism(f"{name} has the wrong source or target")
        _checked(m, name)
    if compose(r_p, t_K).components != compose(t_R, r).components:
        raise BottomNotPushout("bottom square does not commute")
    if not is_pushout(t_K, r, r_p, t_R):
        raise BottomNotPushout("bottom square is not a pushout")
    return RuleRight(K, R, Kp, Rp, r, t_K, t_R, r_p, classify_mono(t_K) == REGULAR_MONO)


def validate_host(rule: RuleRight, G_K, u, u_p) -> HostInterface:
    if u.source != rule.K or u.target != G_K or u_p.source != G_K or u_p.target != rule.Kp:
        raise InvalidMorphism("host morphisms have the wrong sources or targets")
    _checked(u, "u")
    _checked(u_p, "u'")
    if compose(u_p, u).components != rule.t_K.components:
        raise NotCommutative("u' ∘ u differs from t_K")
    if not is_pullback(rule.t_K, u_p, identity(rule.K), u):
        raise InvalidMorphism("K is not the pullback of t_K and u'")
    return HostInterface(G_K, u, u_p)


def _tidy(Q: FuzzyPresheaf, g: FuzzyMorphism, w: FuzzyMorphism):
    """Rename pushout classes: a class inherits the least name of its host
    members, otherwise of its rule members; clashes get primes."""
    C = Q.category
    names = {}
    for i in C.objects:
        host, rule = {}, {}
        for x, q in g.components[i].items():
            host.setdefault(q, []).append(x)
        for x, q in w.components[i].items():
            rule.setdefault(q, []).append(x)
        used, table = set(), {}
        for q in Q.carrier(i):
            if q in host:
                table[q] = min(host[q])
                used.add(table[q])
        for q in Q.carrier(i):
            if q not in table:
                n = min(rule[q])
                while n in used:
                    n += "'"
                table[q] = n
                used.add(n)
        names[i] = table
    return rename_elements(Q, names)


def apply_right_step(rule: RuleRight, host: HostInterface, oracle: str = "fast") -> StepResult:
    """Glue ``R`` into the host: ``G_R = G_K +_K R``, then assemble and check the cube."""
    Q, g_R, w = pushout(host.u, rule.r)
    Q2, ren = _tidy(Q, g_R, w)
    g_R, w = compose(ren, g_R), compose(ren, w)
    try:
        w_p = pushout_mediator(host.u, rule.r, compose(rule.r_p, host.u_p), rule.t_R, Q2, g_R, w)
    except (NotCommutative, QuasikitError) as exc:
        raise MediatorNotUnique(f"no consistent mediator G_R → R': {exc}") from exc
    edges = {
        "ba": rule.t_K, "bc": rule.r, "ad": rule.r_p, "cd": rule.t_R,
        "fe": host.u, "fg": rule.r, "eh": g_R, "gh": w,
        "fb": identity(rule.K), "ea": host.u_p, "gc": identity(rule.R), "hd": w_p,
    }
    cube = cube_from_edges(edges)
    report = check_cube(cube, oracle=oracle)
    if not report.top_pushout:
        raise MediatorNotUnique("top face is not a pushout")
    if rule.t_K_regular and not report.front_pullbacks:
        raise FrontFaceNotPullback("t_K is regular but a front face is not a pullback")
    return StepResult(Q2, w, g_R, w_p, cube, report)


# the transmission demo ---------------------------------------------------

LETTER = "✉"
KEY = "🔑"
RESOURCES = (LETTER, KEY)
ROLES = ("p", "q", "r")
CONTEXT = "x"


def transmission_schema():
    C = build_schema("ternary-connection")
    labels = {"P": powerset(RESOURCES), "C": one_point()}
    return C, labels


def make_state(processes: dict, connections: dict) -> FuzzyPresheaf:
    """``processes``: name -> held resources; ``connections``: name -> (s, m, t)."""
    C, labels = transmission_schema()
    carriers = {"P": list(processes), "C": list(connections)}
    actions = {leg: {c: ends[k] for c, ends in connections.items()} for k, leg in enumerate(("s", "m", "t"))}
    membership = {
        "P": {p: subset_name(held) for p, held in processes.items()},
        "C": {c: labels["C"].top for c in connections},
    }
    return fuzzy_presheaf(C, carriers, actions, labels, membership)


def holds(state: FuzzyPresheaf, p: str) -> set:
    v = state.mu("P", p)
    return set(x for x in v[1:-1].split(",") if x)


def connection_name(ends) -> str:
    return "c[" + ",".join(ends) + "]"


def build_transmission_rule(P: set, Q: set, R: set) -> RuleRight:
    """The rule for residual labels ``P``, ``Q``, ``R`` of the three roles.

    ``K'`` adds a context process ``x`` at top membership and a context
    connection for every pattern over ``{p, q, r, x}``; the matched
    connection is absent from ``K`` and ``R`` and hence deleted.
    """
    K = make_state({"p": P, "q": Q, "r": R}, {})
    Rr = make_state({"p": P, "q": Q | {LETTER}, "r": R}, {})
    every = set(RESOURCES)
    ctx = {}
    for ends in itertools.product(ROLES + (CONTEXT,), repeat=3):
        ctx[connection_name(ends)] = ends
    Kp = make_state({"p": P, "q": Q, "r": R, CONTEXT: every}, ctx)
    ident = {"P": {p: p for p in ROLES}, "C": {}}
    r = FuzzyMorphism(K, Rr, ident)
    t_K = FuzzyMorphism(K, Kp, ident)
    Rq, r_p, t_R = pushout(t_K, r)
    Rp, ren = _tidy(Rq, r_p, t_R)
    return validate_rule(K, Rr, Kp, Rp, r, t_K, compose(ren, t_R), compose(ren, r_p))


def transmission_host(state: FuzzyPresheaf, p: str, q: str, r: str, c: str):
    """Check the transmission conditions and build ``(rule, host)``.

    Raises :class:`NoMatch` when ``p, q, r`` are not distinct, ``✉`` is not
    at ``p`` or already at ``q``, ``🔑`` is not at ``r``, or ``c`` does not
    connect ``(p, q, r)``.
    """
    procs = state.carrier("P")
    if len({p, q, r}) != 3:
        raise NoMatch("p, q, r must be distinct")
    for z in (p, q, r):
        if z not in procs:
            raise NoMatch(f"unknown process {z!r}")
    if c not in state.carrier("C"):
        raise NoMatch(f"no connection {c!r}")
    if LETTER not in holds(state, p):
        raise NoMatch("p does not hold the letter")
    if LETTER in holds(state, q):
        raise NoMatch("q already holds the letter")
    if KEY not in holds(state, r):
        raise NoMatch("r does not hold the key")
    if tuple(state.act(leg, c) for leg in ("s", "m", "t")) != (p, q, r):
        raise NoMatch("connection does not link (p, q, r)")

    P = holds(state, p) - {LETTER}
    Q = holds(state, q)
    R = holds(state, r) - {KEY}
    rule = build_transmission_rule(P, Q, R)

    role = {p: "p", q: "q", r: "r"}
    new_holds = {z: holds(state, z) for z in procs}
    new_holds[p], new_holds[r] = P, R
    conns = {
        k: tuple(state.act(leg, k) for leg in ("s", "m", "t")) for k in state.carrier("C") if k != c
    }
    G_K = make_state(new_holds, conns)
    u = FuzzyMorphism(rule.K, G_K, {"P": {"p": p, "q": q, "r": r}, "C": {}})
    u_p = FuzzyMorphism(
        G_K,
        rule.Kp,
        {
            "P": {z: role.get(z, CONTEXT) for z in procs},
            "C": {k: connection_name(tuple(role.get(z, CONTEXT) for z in ends)) for k, ends in conns.items()},
        },
    )
    return rule, validate_host(rule, G_K, u, u_p)


def build_transmission_demo() -> dict:
    """The three-process example with its hand-computed post-state."""
    C, labels = transmission_schema()
    pre = make_state({"p": {LETTER}, "q": set(), "r": {KEY}}, {"c": ("p", "q", "r")})
    rule, host = transmission_host(pre, "p", "q", "r", "c")
    expected = make_state({"p": set(), "q": {LETTER}, "r": set()}, {})
    return {
        "schema": C,
        "lattice": labels,
        "pre_state": pre,
        "rule": rule,
        "host": host,
        "expected_post": expected,
    }


def transmit(state: FuzzyPresheaf, p: str, q: str, r: str, c: str) -> StepResult:
    rule, host = transmission_host(state, p, q, r, c)
    return apply_right_step(rule, host)
