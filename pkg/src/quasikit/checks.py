"""Property suites behind ``quasikit check``.

Each suite yields :class:`PropertyResult` rows.  Suites draw random
instances from a seeded generator, so a given seed always produces the same
report.  Rows flagged ``expected_negative`` record a failure that the suite
provokes on purpose (for example classifying a non-regular mono).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .category import build_schema
from .classifier import build_classifier, chi, classifying_maps, pullback_true
from .errors import NotRegular, NotResiduated, QuasikitError
from .exponential import curry, evaluation, exponential_object, uncurry
from .instances import (
    all_subobjects,
    random_hom,
    random_over,
    random_presheaf,
    random_subobject,
    random_under,
)
from .lattice import chain, chain3, powerset, validate_heyting
from .limits import (
    binary_coproduct,
    binary_product,
    coequalizer,
    equalizer,
    initial,
    pullback,
    pushout,
    terminal,
    verify_universal,
)
from .presheaf import hom_list, validate_fuzzy_morphism

SUITES = ("heyting", "limits", "classifier", "adjunction", "slice", "adhesive", "topology", "rewrite")


@dataclass
class PropertyResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""
    expected_negative: bool = False

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        if self.expected_negative:
            tail += "  [expected negative]"
        return f"{tag} {self.suite}.{self.name}{tail}"

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "property": self.name,
            "passed": self.passed,
            "expected_negative": self.expected_negative,
            "detail": self.detail,
        }


def bundled_lattices():
    out = {f"chain{n}": chain([str(k) for k in range(n)]) for n in range(1, 6)}
    out["diamond"] = powerset(["a", "b"])
    out["powerset3"] = powerset(["a", "b", "c"])
    return out


def m3_and_n5():
    m3 = (["0", "a", "b", "c", "1"], [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")])
    n5 = (["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
    return {"M3": m3, "N5": n5}


def heyting_laws(L) -> tuple[bool, str]:
    E = L.elements
    for a, b, c in itertools.product(E, repeat=3):
        if L.leq(L.meet(a, b), c) != L.leq(a, L.imp(b, c)):
            return False, f"residuation fails at {a},{b},{c}"
    for a, b in itertools.product(E, repeat=2):
        if L.meet(a, L.imp(a, b)) != L.meet(a, b):
            return False, f"modus ponens fails at {a},{b}"
    return True, f"{len(E)} elements"


def suite_heyting(seed, budget):
    for name, L in bundled_lattices().items():
        ok, detail = heyting_laws(L)
        yield PropertyResult("heyting", f"laws[{name}]", ok, detail)
    for name, (els, order) in m3_and_n5().items():
        try:
            validate_heyting(els, order)
            yield PropertyResult("heyting", f"rejects[{name}]", False, "accepted")
        except NotResiduated:
            yield PropertyResult("heyting", f"rejects[{name}]", True, "NotResiduated")


def _diagram_objects(kind, diagram):
    if kind in ("terminal", "initial"):
        return []
    if kind in ("product", "coproduct"):
        return list(diagram)
    f, g = diagram
    return [f.source, f.target, g.source, g.target]


def limit_instance(kind, C, L, rng, budget, max_carrier=3):
    """Random input diagram for ``kind`` (every object with carriers of at
    most ``max_carrier`` elements) together with the computed (co)limit."""
    while True:
        diagram, apex, legs = _limit_instance(kind, C, L, rng, budget, max_carrier)
        objs = _diagram_objects(kind, diagram)
        if all(len(X.carrier(i)) <= max_carrier for X in objs for i in C.objects):
            return diagram, apex, legs


def _limit_instance(kind, C, L, rng, budget, max_carrier):
    if kind in ("terminal", "initial"):
        apex = terminal(C, L) if kind == "terminal" else initial(C, L)
        return (C, L), apex, ()
    A = random_presheaf(C, L, rng, max_carrier=max_carrier)
    if kind in ("product", "coproduct"):
        B = random_presheaf(C, L, rng, max_carrier=max_carrier)
        apex, l1, l2 = binary_product(A, B) if kind == "product" else binary_coproduct(A, B)
        return (A, B), apex, (l1, l2)
    if kind == "pullback":
        B, f = random_over(A, rng)
        Cc, g = random_over(A, rng)
        P, p1, p2 = pullback(f, g)
        return (f, g), P, (p1, p2)
    if kind == "pushout":
        B, f = random_under(A, rng)
        Cc, g = random_under(A, rng)
        Q, i1, i2 = pushout(f, g)
        return (f, g), Q, (i1, i2)
    B, f = random_under(A, rng)
    g = random_hom(A, B, rng, budget) or f
    if kind == "equalizer":
        E, e = equalizer(f, g)
        return (f, g), E, (e,)
    Q, q = coequalizer(f, g)
    return (f, g), Q, (q,)


def suite_limits(seed, budget, instances=12):
    C, L = build_schema("graph"), chain3()
    rng = random.Random(seed)
    for kind in ("terminal", "initial", "product", "coproduct", "pullback", "pushout", "equalizer", "coequalizer"):
        bad, explored = None, 0
        for k in range(instances):
            diagram, apex, legs = limit_instance(kind, C, L, rng, budget)
            rep = verify_universal(kind, diagram, apex, legs, budget=budget)
            explored += rep.explored
            if not rep.ok:
                bad = f"instance {k}: {rep.counterexample}"
                break
        yield PropertyResult("limits", f"universal[{kind}]", bad is None, bad or f"{instances} instances, {explored} maps")


def suite_classifier(seed, budget):
    C, L = build_schema("graph"), chain3()
    Omega, true = build_classifier(C, L)
    sizes = (len(Omega.carrier("V")), len(Omega.carrier("E")))
    yield PropertyResult("classifier", "omega_shape", sizes == (2, 5), f"|V|={sizes[0]} |E|={sizes[1]}")
    rng = random.Random(seed)
    count = 0
    ok = True
    for _ in range(4):
        B = random_presheaf(C, L, rng, max_carrier=2)
        for S in all_subobjects(B):
            phi = chi(S, Omega)
            maps = classifying_maps(S, Omega, budget=budget)
            count += 1
            if pullback_true(phi) != S or len(maps) != 1:
                ok = False
    yield PropertyResult("classifier", "chi_unique", ok, f"{count} regular subobjects")
    # bundled mono with a lowered membership: it has no characteristic map
    from .serialize import load_fixture

    lowered = load_fixture("triangle-lowered.json")
    try:
        chi(lowered, build_classifier(lowered.ambient.category, lowered.ambient.labels)[0])
        yield PropertyResult("classifier", "rejects_non_regular", False, "non-regular mono was classified", True)
    except NotRegular as exc:
        yield PropertyResult("classifier", "rejects_non_regular", True, f"NotRegular: {exc}", True)


def suite_adjunction(seed, budget, instances=6):
    rng = random.Random(seed)
    L = chain3()
    for kind in ("terminal", "graph"):
        C = build_schema(kind)
        ok, sizes = True, []
        for _ in range(instances):
            Cobj = random_presheaf(C, L, rng, max_carrier=2)
            A = random_presheaf(C, L, rng, max_carrier=2)
            B = random_presheaf(C, L, rng, max_carrier=2)
            exp = exponential_object(A, B, budget=budget)
            P = binary_product(Cobj, A)[0]
            hs = hom_list(P, B, budget=budget)
            ks = hom_list(Cobj, exp.obj, budget=budget)
            sizes.append((len(hs), len(ks)))
            curried = {curry(h, Cobj, A, exp) for h in hs}
            if len(hs) != len(ks) or len(curried) != len(hs) or any(uncurry(curry(h, Cobj, A, exp), A, exp) != h for h in hs):
                ok = False
            if any(curry(uncurry(k, A, exp), Cobj, A, exp) != k for k in ks):
                ok = False
            ev = evaluation(exp)
            validate_fuzzy_morphism(ev.components, ev.source, ev.target)
        detail = "hom sizes " + ",".join(f"{a}={b}" if a == b else f"{a}!={b}" for a, b in sizes)
        yield PropertyResult("adjunction", f"curry_bijection[{kind}]", ok, detail)


def suite_slice(seed, budget, instances=8):
    from .slice import category_of_elements, equivalence_witness, slice_homs, slice_object, slice_to_elements
    from .presheaf import count_homs

    rng = random.Random(seed)
    C, L = build_schema("graph"), chain3()
    ok_eq, ok_hom, detail = True, True, []
    for _ in range(instances):
        D = random_presheaf(C, L, rng, max_carrier=2)
        E = category_of_elements(D)
        A, p = random_over(D, rng)
        B, q = random_over(D, rng)
        x, y = slice_object(p), slice_object(q)
        if not equivalence_witness(x, E).ok:
            ok_eq = False
        n1 = len(slice_homs(x, y, budget=budget))
        n2 = count_homs(slice_to_elements(x, E), slice_to_elements(y, E), budget=budget)
        detail.append(f"{n1}/{n2}")
        if n1 != n2:
            ok_hom = False
    yield PropertyResult("slice", "sigma_tau_iso", ok_eq, f"{instances} slices")
    yield PropertyResult("slice", "hom_counts", ok_hom, " ".join(detail))


def suite_adhesive(seed, budget, pairs=20, cubes=10):
    from .adhesive import regular_union, rm_adhesivity_probe

    rng = random.Random(seed)
    C, L = build_schema("graph"), chain3()
    ok = True
    for _ in range(pairs):
        B = random_presheaf(C, L, rng)
        u = regular_union(random_subobject(B, rng), random_subobject(B, rng))
        if not (u.h_monic and u.h_regular and u.union.regular):
            ok = False
    yield PropertyResult("adhesive", "union_regular", ok, f"{pairs} pairs")
    violations = checked = 0
    for k in range(cubes):
        B = random_presheaf(C, L, rng, max_carrier=2)
        S = random_subobject(B, rng)
        m = S.inclusion()
        Cc, f = random_under(m.source, rng)
        rep = rm_adhesivity_probe(m, f, samples=2, seed=seed * 1000 + k, budget=budget)
        violations += len(rep.violations)
        checked += rep.vk_checked
    yield PropertyResult("adhesive", "vk_probe", violations == 0, f"{checked} cubes, {violations} violations")


def suite_topology(seed, budget):
    from .instances import graph_presheaf, small_graphs
    from .topology import (
        DISCRETE,
        NOTNOT,
        TRIVIAL,
        check_topology_axioms,
        dense_criteria,
        is_separated,
        not_complement,
        notnot_closure,
    )

    rng = random.Random(seed)
    C, L = build_schema("graph"), chain3()
    ok_nn = ok_dense = True
    samples = []
    for _ in range(10):
        A = random_presheaf(C, L, rng)
        subs = [random_subobject(A, rng, regular=bool(k % 2)) for k in range(4)]
        for S in subs:
            if notnot_closure(S) != not_complement(not_complement(S)):
                ok_nn = False
            a, b = dense_criteria(S)
            if a != b:
                ok_dense = False
        maps = []
        for _ in range(2):
            H, h = random_over(A, rng)
            maps.append(h)
        samples.append((subs, maps))
    yield PropertyResult("topology", "notnot_is_double_not", ok_nn)
    yield PropertyResult("topology", "dense_criteria_agree", ok_dense)
    for t in (TRIVIAL, DISCRETE, NOTNOT):
        try:
            rep = check_topology_axioms(t, samples)
            yield PropertyResult("topology", f"axioms[{t.name}]", True, str(sum(rep.checked.values())) + " checks")
        except QuasikitError as exc:
            yield PropertyResult("topology", f"axioms[{t.name}]", False, str(exc))
    agree = total = 0
    for n, edges in small_graphs(3, 2):
        B = graph_presheaf(n, edges, L, C=C)
        total += 1
        if is_separated(B, "criterion") == is_separated(B, "definitional", budget=budget):
            agree += 1
    yield PropertyResult("topology", "separated_modes_agree", agree == total, f"{agree}/{total}")


def suite_rewrite(seed, budget):
    from .rewrite import apply_right_step, build_transmission_demo

    demo = build_transmission_demo()
    res = apply_right_step(demo["rule"], demo["host"])
    yield PropertyResult("rewrite", "transmission_post_state", res.G_R == demo["expected_post"])
    yield PropertyResult("rewrite", "front_faces_pullbacks", res.report.front_pullbacks and demo["rule"].t_K_regular)


RUNNERS = {
    "heyting": suite_heyting,
    "limits": suite_limits,
    "classifier": suite_classifier,
    "adjunction": suite_adjunction,
    "slice": suite_slice,
    "adhesive": suite_adhesive,
    "topology": suite_topology,
    "rewrite": suite_rewrite,
}


def run_suite(name: str, seed: int = 0, budget=None) -> list[PropertyResult]:
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        out.extend(RUNNERS[n](seed, budget))
    return out
