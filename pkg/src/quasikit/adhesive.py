"""Unions of regular subobjects and Van Kampen checks on commutative cubes.

Cube wiring (bottom ``ABCD``, top ``EFGH``)::

        F --fe--> E          B --ba--> A
        |fg       |eh        |bc       |ad
        v         v          v         v
        G --gh--> H          C --cd--> D

with verticals ``fb : F → B``, ``ea : E → A``, ``gc : G → C``, ``hd : H → D``.
Back faces are ``FBAE`` and ``FBCG``, front faces ``EADH`` and ``GCDH``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .budget import as_budget
from .errors import NotCommutative, NotRegular, ObjectMismatch
from .instances import random_over
from .limits import (
    is_pullback,
    is_pushout,
    pullback,
    pullback_mediator,
    pushout,
    pushout_mediator,
    verify_universal,
)
from .presheaf import (
    NOT_MONO,
    REGULAR_MONO,
    FuzzyMorphism,
    FuzzyPresheaf,
    Presheaf,
    Subobject,
    canonical_subobject,
    classify_mono,
    compose,
    make_fuzzy,
)

OBJECTS = ("A", "B", "C", "D", "E", "F", "G", "H")
EDGES = {
    "ba": ("B", "A"),
    "bc": ("B", "C"),
    "ad": ("A", "D"),
    "cd": ("C", "D"),
    "fe": ("F", "E"),
    "fg": ("F", "G"),
    "eh": ("E", "H"),
    "gh": ("G", "H"),
    "fb": ("F", "B"),
    "ea": ("E", "A"),
    "gc": ("G", "C"),
    "hd": ("H", "D"),
}
# each face as two paths that must agree
FACES = {
    "bottom": (("ba", "ad"), ("bc", "cd")),
    "top": (("fe", "eh"), ("fg", "gh")),
    "back_left": (("fb", "ba"), ("fe", "ea")),
    "back_right": (("fb", "bc"), ("fg", "gc")),
    "front_left": (("ea", "ad"), ("eh", "hd")),
    "front_right": (("gc", "cd"), ("gh", "hd")),
}


# unions ------------------------------------------------------------------


@dataclass
class UnionResult:
    union: Subobject
    mediator: FuzzyMorphism
    h_monic: bool
    h_regular: bool


def regular_union(S1: Subobject, S2: Subobject) -> UnionResult:
    """Pushout of the pullback of two regular subobjects, mapped into the ambient."""
    if S1.ambient != S2.ambient:
        raise ObjectMismatch("subobjects of different ambients")
    for S in (S1, S2):
        if not S.regular:
            raise NotRegular("union is only defined here for regular subobjects")
    f, g = S1.inclusion(), S2.inclusion()
    _, p1, p2 = pullback(f, g)
    U, j1, j2 = pushout(p1, p2)
    h = pushout_mediator(p1, p2, f, g, U, j1, j2)
    kind = classify_mono(h)
    if kind == NOT_MONO:
        return UnionResult(None, h, False, False)
    return UnionResult(canonical_subobject(h), h, True, kind == REGULAR_MONO)


# cubes -------------------------------------------------------------------


@dataclass
class CommutativeCube:
    objects: dict
    edges: dict

    def __getitem__(self, name):
        return self.edges[name] if name in self.edges else self.objects[name]


def make_cube(objects: dict, edges: dict) -> CommutativeCube:
    """Assemble a cube and check that all six faces commute."""
    cube = CommutativeCube(dict(objects), dict(edges))
    for e, (s, t) in EDGES.items():
        if e not in cube.edges:
            raise NotCommutative(f"cube is missing edge {e!r}")
        m = cube.edges[e]
        if m.source != cube.objects[s] or m.target != cube.objects[t]:
            raise NotCommutative(f"edge {e!r} does not go from {s} to {t}")
    for face, (p1, p2) in FACES.items():
        a = compose(cube.edges[p1[1]], cube.edges[p1[0]])
        b = compose(cube.edges[p2[1]], cube.edges[p2[0]])
        if a.components != b.components:
            raise NotCommutative(f"{face} face does not commute")
    return cube


def cube_from_edges(edges: dict) -> CommutativeCube:
    objects = {}
    for e, (s, t) in EDGES.items():
        objects.setdefault(s, edges[e].source)
        objects.setdefault(t, edges[e].target)
    return make_cube(objects, edges)


@dataclass
class CubeReport:
    back_pullbacks: bool
    bottom_pushout: bool
    top_pushout: bool
    front_pullbacks: bool
    vk_verdict: bool | None
    stability_verdict: bool | None
    faces: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "back_pullbacks": self.back_pullbacks,
            "bottom_pushout": self.bottom_pushout,
            "top_pushout": self.top_pushout,
            "front_pullbacks": self.front_pullbacks,
            "vk_verdict": self.vk_verdict,
            "stability_verdict": self.stability_verdict,
            "faces": dict(self.faces),
        }


def _face_checks(cube: CommutativeCube, oracle: str, budget) -> dict:
    e = cube.edges
    # (cospan f, g) with legs (p1, p2) for pullback faces; (span f, g) with legs for pushouts
    pb = {
        "back_left": (e["ba"], e["ea"], e["fb"], e["fe"]),
        "back_right": (e["bc"], e["gc"], e["fb"], e["fg"]),
        "front_left": (e["ad"], e["hd"], e["ea"], e["eh"]),
        "front_right": (e["cd"], e["hd"], e["gc"], e["gh"]),
    }
    po = {
        "bottom": (e["ba"], e["bc"], e["ad"], e["cd"]),
        "top": (e["fe"], e["fg"], e["eh"], e["gh"]),
    }
    out = {}
    for name, (f, g, l1, l2) in pb.items():
        fast = is_pullback(f, g, l1, l2)
        if oracle in ("brute", "both"):
            brute = verify_universal("pullback", (f, g), l1.source, (l1, l2), budget=budget).ok
            if oracle == "both" and brute != fast:
                raise AssertionError(f"pullback oracles disagree on the {name} face")
            fast = brute
        out[name] = fast
    for name, (f, g, l1, l2) in po.items():
        fast = is_pushout(f, g, l1, l2)
        if oracle in ("brute", "both"):
            brute = verify_universal("pushout", (f, g), l1.target, (l1, l2), budget=budget).ok
            if oracle == "both" and brute != fast:
                raise AssertionError(f"pushout oracles disagree on the {name} face")
            fast = brute
        out[name] = fast
    return out


def check_cube(cube: CommutativeCube, oracle: str = "fast", budget=None) -> CubeReport:
    """Decide every face property and evaluate the VK and stability conditions.

    ``oracle`` is ``fast`` (comparison maps into canonical constructions),
    ``brute`` (probe enumeration) or ``both`` (cross-checked).  The verdicts
    are ``None`` when the hypotheses (back pullbacks, bottom pushout) fail.
    """
    budget = as_budget(budget)
    cube = make_cube(cube.objects, cube.edges)
    faces = _face_checks(cube, oracle, budget)
    back = faces["back_left"] and faces["back_right"]
    front = faces["front_left"] and faces["front_right"]
    bottom, top = faces["bottom"], faces["top"]
    vk = stab = None
    if back and bottom:
        vk = front == top
        stab = (not front) or top
    return CubeReport(back, bottom, top, front, vk, stab, faces)


# sampling ----------------------------------------------------------------


def stability_cube(m: FuzzyMorphism, f: FuzzyMorphism, hd_pair=None, rng=None) -> CommutativeCube:
    """Complete the pushout of ``B ←m– A –f→ C`` by pulling back along ``H → D``.

    Front and back faces are pullbacks by construction; VK then demands a
    pushout on top.
    """
    rng = rng or random.Random(0)
    D, ad, cd = pushout(m, f)
    H, hd = hd_pair if hd_pair is not None else random_over(D, rng)
    E, ea, eh = pullback(ad, hd)
    G, gc, gh = pullback(cd, hd)
    F, fb, fe = pullback(m, ea)
    fg = pullback_mediator(cd, hd, compose(f, fb), compose(eh, fe), G)
    edges = {
        "ba": m, "bc": f, "ad": ad, "cd": cd,
        "fe": fe, "fg": fg, "eh": eh, "gh": gh,
        "fb": fb, "ea": ea, "gc": gc, "hd": hd,
    }
    return cube_from_edges(edges)


def _sub_of(X: FuzzyPresheaf, keep: dict) -> tuple[FuzzyPresheaf, FuzzyMorphism]:
    C = X.category
    carriers = {i: sorted(keep[i]) for i in C.objects}
    actions = {m: {x: X.act(m, x) for x in carriers[C.dom(m)]} for m in C.morphisms}
    S = make_fuzzy(Presheaf(C, carriers, actions), X.labels, {i: {x: X.mu(i, x) for x in carriers[i]} for i in C.objects})
    return S, FuzzyMorphism(S, X, {i: {x: x for x in carriers[i]} for i in C.objects})


def _closed(X: FuzzyPresheaf, keep: dict) -> dict:
    C = X.category
    keep = {i: set(v) for i, v in keep.items()}
    changed = True
    while changed:
        changed = False
        for m in C.non_identity():
            d, c = C.morphisms[m]
            for x in list(keep[d]):
                y = X.act(m, x)
                if y not in keep[c]:
                    keep[c].add(y)
                    changed = True
    return keep


def descent_cube(m: FuzzyMorphism, f: FuzzyMorphism, rng=None, tries: int = 20):
    """A cube whose top face is a pushout and whose back faces are pullbacks.

    Regular subobjects ``E ⊆ A ×_D H`` and ``G ⊆ C ×_D H`` with matching
    preimages in ``B ×_D H`` are chosen at random, ``F`` is their common
    preimage and the top is pushed out.  VK then demands pullback front
    faces.  Returns ``None`` if no matching pair was found.
    """
    rng = rng or random.Random(0)
    D, ad, cd = pushout(m, f)
    H, hd = random_over(D, rng)
    E0, ea0, eh0 = pullback(ad, hd)
    G0, gc0, gh0 = pullback(cd, hd)
    C = D.category
    for _ in range(tries):
        keepE = _closed(E0, {i: {x for x in E0.carrier(i) if rng.random() < 0.6} for i in C.objects})
        E, e_inc = _sub_of(E0, keepE)
        ea, ehx = compose(ea0, e_inc), compose(eh0, e_inc)
        F, fb, fe = pullback(m, ea)
        # G must contain the image of F and nothing else hit from B ×_D H
        BH = {i: set() for i in C.objects}
        for i in C.objects:
            for b in m.source.carrier(i):
                for h in H.carrier(i):
                    if hd(i, h) == ad(i, m(i, b)):
                        BH[i].add((b, h))
        inF = {i: {(fb(i, x), ehx(i, fe(i, x))) for x in F.carrier(i)} for i in C.objects}
        image = {i: {(f(i, b), h) for b, h in inF[i]} for i in C.objects}
        forbidden = {i: {(f(i, b), h) for b, h in BH[i] - inF[i]} for i in C.objects}
        if any(image[i] & forbidden[i] for i in C.objects):
            continue
        keepG = {}
        name_of = {i: {(gc0(i, g), gh0(i, g)): g for g in G0.carrier(i)} for i in C.objects}
        for i in C.objects:
            keepG[i] = {name_of[i][p] for p in image[i]}
            for g in G0.carrier(i):
                pair = (gc0(i, g), gh0(i, g))
                if pair not in forbidden[i] and rng.random() < 0.5:
                    keepG[i].add(g)
        keepG = _closed(G0, keepG)
        if any((gc0(i, g), gh0(i, g)) in forbidden[i] for i in C.objects for g in keepG[i]):
            continue
        G, g_inc = _sub_of(G0, keepG)
        gc = compose(gc0, g_inc)
        fg = pullback_mediator(cd, hd, compose(f, fb), compose(ehx, fe), G0)
        fg = FuzzyMorphism(F, G, fg.components)
        Hn, eh, gh = pushout(fe, fg)
        hdn = pushout_mediator(fe, fg, compose(ad, ea), compose(cd, gc), Hn, eh, gh)
        edges = {
            "ba": m, "bc": f, "ad": ad, "cd": cd,
            "fe": fe, "fg": fg, "eh": eh, "gh": gh,
            "fb": fb, "ea": ea, "gc": gc, "hd": hdn,
        }
        return cube_from_edges(edges)
    return None


@dataclass
class ProbeReport:
    regular: bool
    sampled: int = 0
    vk_checked: int = 0
    violations: list = field(default_factory=list)
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "regular": self.regular,
            "sampled": self.sampled,
            "vk_checked": self.vk_checked,
            "violations": len(self.violations),
            "skipped": self.skipped,
            "ok": self.ok,
        }


def rm_adhesivity_probe(m: FuzzyMorphism, f: FuzzyMorphism, samples: int = 20, seed: int = 0,
                        oracle: str = "fast", budget=None) -> ProbeReport:
    """Sample completing cubes over the pushout of ``B ←m– A –f→ C`` and check VK.

    Half of the cubes come from pulling back along a random ``H → D``
    (stability direction), half from gluing matching subobjects on top
    (descent direction).  A non-regular ``m`` is accepted and the probe then
    runs diagnostically.
    """
    kind = classify_mono(m)
    if kind == NOT_MONO:
        raise NotRegular("the span's left leg must be a mono")
    rng = random.Random(seed)
    budget = as_budget(budget)
    report = ProbeReport(kind == REGULAR_MONO)
    for k in range(samples):
        cube = stability_cube(m, f, rng=rng) if k % 2 == 0 else descent_cube(m, f, rng=rng)
        report.sampled += 1
        if cube is None:
            report.skipped += 1
            continue
        rep = check_cube(cube, oracle=oracle, budget=budget)
        if rep.vk_verdict is None:
            report.skipped += 1
            continue
        report.vk_checked += 1
        if not rep.vk_verdict:
            report.violations.append((k, rep, cube))
    return report
