"""JSON exchange format.

Every document is an object with a ``"$kind"`` discriminator: ``lattice``,
``category``, ``presheaf``, ``morphism``, ``subobject``, ``rule``, ``host``,
``cube``, ``construction`` or ``report``.  Wherever a value is expected, a string is read
as a path (relative to the referring file) and an object as an inline
document.  Output is canonical: sorted keys, sorted carriers, two-space
indent, trailing newline.
"""

from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

from .category import FiniteCategory, SCHEMA_KINDS, build_schema, validate_category
from .errors import ParseError, QuasikitError, UnresolvedRef
from .lattice import HeytingAlgebra, powerset, validate_heyting
from .presheaf import (
    FuzzyMorphism,
    FuzzyPresheaf,
    Subobject,
    fuzzy_presheaf,
    make_subobject,
    validate_fuzzy_morphism,
)

KINDS = ("lattice", "category", "presheaf", "morphism", "subobject", "rule", "host", "cube", "construction", "report")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# to JSON -----------------------------------------------------------------


def lattice_doc(L: HeytingAlgebra) -> dict:
    return {"$kind": "lattice", "elements": list(L.elements), "order": [list(p) for p in L.hasse_pairs()], "mode": "hasse"}


def category_doc(C: FiniteCategory) -> dict:
    if C.kind in SCHEMA_KINDS:
        try:
            if build_schema(C.kind, C.params) == C:
                doc = {"$kind": "category", "schema": C.kind}
                if C.params:
                    doc["params"] = dict(C.params)
                return doc
        except QuasikitError:
            pass
    return {
        "$kind": "category",
        "objects": list(C.objects),
        "morphisms": [{"id": m, "dom": d, "cod": c} for m, (d, c) in C.morphisms.items()],
        "identities": dict(sorted(C.identities.items())),
        "compose": [[g, f, gf] for (g, f), gf in sorted(C.compose_table.items())],
    }


def presheaf_doc(A: FuzzyPresheaf) -> dict:
    C = A.category
    doc = {"$kind": "presheaf", "category": category_doc(C)}
    labels = [A.L(i) for i in C.objects]
    if labels and all(L == labels[0] for L in labels):
        doc["lattice"] = lattice_doc(labels[0])
    else:
        doc["lattices"] = {i: lattice_doc(A.L(i)) for i in C.objects}
    doc["carriers"] = {i: list(A.carrier(i)) for i in C.objects}
    doc["actions"] = {
        m: dict(sorted(A.shape.actions[m].items())) for m in C.morphisms if not C.is_identity(m)
    }
    doc["membership"] = {i: dict(sorted(A.membership[i].items())) for i in C.objects}
    return doc


def components_doc(f: FuzzyMorphism) -> dict:
    return {i: dict(sorted(c.items())) for i, c in sorted(f.components.items())}


def morphism_doc(f: FuzzyMorphism) -> dict:
    return {"$kind": "morphism", "from": presheaf_doc(f.source), "to": presheaf_doc(f.target), "components": components_doc(f)}


def subobject_doc(S: Subobject) -> dict:
    return {
        "$kind": "subobject",
        "ambient": presheaf_doc(S.ambient),
        "subset": {i: sorted(s) for i, s in sorted(S.subset.items())},
        "membership": {i: dict(sorted(m.items())) for i, m in sorted(S.membership.items())},
    }


def rule_doc(rule) -> dict:
    return {
        "$kind": "rule",
        "K": presheaf_doc(rule.K),
        "R": presheaf_doc(rule.R),
        "K'": presheaf_doc(rule.Kp),
        "R'": presheaf_doc(rule.Rp),
        "r": {"components": components_doc(rule.r)},
        "t_K": {"components": components_doc(rule.t_K)},
        "t_R": {"components": components_doc(rule.t_R)},
        "r'": {"components": components_doc(rule.r_p)},
    }


def host_doc(host) -> dict:
    return {
        "$kind": "host",
        "G_K": presheaf_doc(host.G_K),
        "u": {"components": components_doc(host.u)},
        "u'": {"components": components_doc(host.u_p)},
    }


def cube_doc(cube) -> dict:
    return {
        "$kind": "cube",
        "objects": {k: presheaf_doc(v) for k, v in sorted(cube.objects.items())},
        "edges": {k: {"components": components_doc(v)} for k, v in sorted(cube.edges.items())},
    }


def construction_doc(op: str, apex: FuzzyPresheaf, legs: dict, extra: dict | None = None) -> dict:
    doc = {
        "$kind": "construction",
        "op": op,
        "apex": presheaf_doc(apex),
        "legs": {
            name: {"from": presheaf_doc(f.source), "to": presheaf_doc(f.target), "components": components_doc(f)}
            for name, f in legs.items()
        },
    }
    if extra:
        doc.update(extra)
    return doc


def to_doc(x) -> dict:
    from .adhesive import CommutativeCube
    from .rewrite import HostInterface, RuleRight

    if isinstance(x, HeytingAlgebra):
        return lattice_doc(x)
    if isinstance(x, FiniteCategory):
        return category_doc(x)
    if isinstance(x, FuzzyPresheaf):
        return presheaf_doc(x)
    if isinstance(x, FuzzyMorphism):
        return morphism_doc(x)
    if isinstance(x, Subobject):
        return subobject_doc(x)
    if isinstance(x, RuleRight):
        return rule_doc(x)
    if isinstance(x, HostInterface):
        return host_doc(x)
    if isinstance(x, CommutativeCube):
        return cube_doc(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def serialize(x) -> str:
    return dumps(to_doc(x))


# from JSON ---------------------------------------------------------------


class Workspace:
    """Loads documents from files, resolving references relative to each file.

    Every loaded value has passed its validator; values are cached by path.
    """

    def __init__(self):
        self.cache: dict[str, object] = {}

    def load(self, path, expect: str | None = None):
        path = os.path.abspath(path)
        if path not in self.cache:
            try:
                text = Path(path).read_text(encoding="utf-8")
            except FileNotFoundError:
                raise UnresolvedRef(f"no such file: {path}") from None
            except OSError as exc:
                raise ParseError(f"cannot read {path}: {exc}") from None
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"{path}: {exc}") from None
            self.cache[path] = self.parse(doc, os.path.dirname(path))
        value = self.cache[path]
        _expect(value, expect, path)
        return value

    def resolve(self, ref, base: str, expect: str | None = None, context: dict | None = None):
        if isinstance(ref, str):
            value = self.load(os.path.join(base, ref))
            _expect(value, expect, ref)
            return value
        if isinstance(ref, dict):
            if expect and "$kind" not in ref:
                ref = dict(ref, **{"$kind": expect})
            value = self.parse(ref, base, context)
            _expect(value, expect, "inline value")
            return value
        raise ParseError(f"expected a path or an inline object, got {type(ref).__name__}")

    def parse(self, doc, base: str = ".", context: dict | None = None):
        if not isinstance(doc, dict):
            raise ParseError("document must be a JSON object")
        kind = doc.get("$kind")
        if kind is None:
            kind = _guess_kind(doc)
        parser = getattr(self, f"_parse_{kind}", None)
        if kind not in KINDS or parser is None:
            raise ParseError(f"unknown $kind {kind!r}")
        try:
            return parser(doc, base, context or {})
        except KeyError as exc:
            raise ParseError(f"{kind} document is missing field {exc}") from None
        except (TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"malformed {kind} document: {exc}") from None

    def _parse_lattice(self, doc, base, ctx):
        if "powerset_of" in doc:
            return powerset(list(doc["powerset_of"]))
        return validate_heyting(list(doc["elements"]), [tuple(p) for p in doc.get("order", [])], doc.get("mode", "hasse"))

    def _parse_category(self, doc, base, ctx):
        if "schema" in doc:
            return build_schema(doc["schema"], doc.get("params") or {})
        morphisms = {m["id"]: (m["dom"], m["cod"]) for m in doc["morphisms"]}
        return validate_category(
            doc["objects"], morphisms, doc["identities"], [tuple(t) for t in doc["compose"]]
        )

    def _parse_presheaf(self, doc, base, ctx):
        C = self.resolve(doc["category"], base, "category")
        if "lattices" in doc:
            labels = {i: self.resolve(doc["lattices"][i], base, "lattice") for i in doc["lattices"]}
            missing = set(C.objects) - set(labels)
            if missing:
                raise UnresolvedRef(f"no lattice given for objects {sorted(missing)}")
        else:
            L = self.resolve(doc["lattice"], base, "lattice")
            labels = {i: L for i in C.objects}
        carriers = {i: list(v) for i, v in doc["carriers"].items()}
        return fuzzy_presheaf(C, carriers, doc.get("actions", {}), labels, doc.get("membership"))

    def _parse_morphism(self, doc, base, ctx):
        src = self.resolve(doc["from"], base, "presheaf") if "from" in doc else ctx.get("from")
        tgt = self.resolve(doc["to"], base, "presheaf") if "to" in doc else ctx.get("to")
        if src is None or tgt is None:
            raise UnresolvedRef("morphism has no source or target")
        return validate_fuzzy_morphism(doc["components"], src, tgt)

    def _parse_subobject(self, doc, base, ctx):
        A = self.resolve(doc["ambient"], base, "presheaf")
        return make_subobject(A, doc["subset"], doc.get("membership"))

    def _parse_rule(self, doc, base, ctx):
        from .rewrite import validate_rule

        objs = {k: self.resolve(doc[k], base, "presheaf") for k in ("K", "R", "K'", "R'")}
        ends = {"r": ("K", "R"), "t_K": ("K", "K'"), "t_R": ("R", "R'"), "r'": ("K'", "R'")}
        maps = {}
        for name, (s, t) in ends.items():
            maps[name] = self._arrow(doc[name], base, objs[s], objs[t])
        return validate_rule(objs["K"], objs["R"], objs["K'"], objs["R'"], maps["r"], maps["t_K"], maps["t_R"], maps["r'"])

    def _parse_host(self, doc, base, ctx):
        from .rewrite import validate_host

        rule = ctx.get("rule")
        if rule is None:
            if "rule" not in doc:
                raise UnresolvedRef("a host needs its rule (pass it alongside or add a \"rule\" reference)")
            rule = self.resolve(doc["rule"], base, "rule")
        G_K = self.resolve(doc["G_K"], base, "presheaf")
        u = self._arrow(doc["u"], base, rule.K, G_K)
        u_p = self._arrow(doc["u'"], base, G_K, rule.Kp)
        return validate_host(rule, G_K, u, u_p)

    def _parse_cube(self, doc, base, ctx):
        from .adhesive import EDGES, make_cube

        objs = {k: self.resolve(v, base, "presheaf") for k, v in doc["objects"].items()}
        edges = {}
        for name, (s, t) in EDGES.items():
            edges[name] = self._arrow(doc["edges"][name], base, objs[s], objs[t])
        return make_cube(objs, edges)

    def _parse_construction(self, doc, base, ctx):
        out = {"op": doc["op"]}
        if "apex" in doc:
            out["apex"] = self.resolve(doc["apex"], base, "presheaf")
        out["legs"] = {k: self.resolve(v, base, "morphism") for k, v in doc.get("legs", {}).items()}
        if "category" in doc:
            out["category"] = self.resolve(doc["category"], base, "category")
            out["lattices"] = {i: self.resolve(v, base, "lattice") for i, v in doc.get("lattices", {}).items()}
        return out

    def _parse_report(self, doc, base, ctx):
        return {k: v for k, v in doc.items() if k != "$kind"}

    def _arrow(self, ref, base, src, tgt):
        if isinstance(ref, dict) and "components" in ref and "from" not in ref:
            return self.parse(dict(ref, **{"$kind": "morphism"}), base, {"from": src, "to": tgt})
        f = self.resolve(ref, base, "morphism")
        if f.source != src or f.target != tgt:
            raise UnresolvedRef("morphism reference has an unexpected source or target")
        return f

    def load_host(self, path, rule):
        path = os.path.abspath(path)
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise UnresolvedRef(f"no such file: {path}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
        return self.parse(doc, os.path.dirname(path), {"rule": rule})


def _guess_kind(doc: dict) -> str:
    if "powerset_of" in doc or "elements" in doc:
        return "lattice"
    if "schema" in doc or "objects" in doc and "morphisms" in doc:
        return "category"
    if "carriers" in doc:
        return "presheaf"
    if "components" in doc:
        return "morphism"
    raise ParseError("document has no $kind")


_TYPES = {
    "lattice": HeytingAlgebra,
    "category": FiniteCategory,
    "presheaf": FuzzyPresheaf,
    "morphism": FuzzyMorphism,
    "subobject": Subobject,
}


def _expect(value, expect, where):
    if expect is None:
        return
    t = _TYPES.get(expect)
    if t is not None and not isinstance(value, t):
        raise ParseError(f"{where}: expected a {expect}, found {type(value).__name__}")


def fixtures_dir() -> Path:
    return Path(str(resources.files("quasikit") / "fixtures"))


def load_fixture(name: str):
    return Workspace().load(fixtures_dir() / name)


def parse_text(text: str, base: str = "."):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from None
    return Workspace().parse(doc, base)


def kind_of(value) -> str:
    from .adhesive import CommutativeCube
    from .rewrite import HostInterface, RuleRight

    for name, t in _TYPES.items():
        if isinstance(value, t):
            return name
    if isinstance(value, RuleRight):
        return "rule"
    if isinstance(value, HostInterface):
        return "host"
    if isinstance(value, CommutativeCube):
        return "cube"
    if isinstance(value, dict):
        return "construction" if "op" in value else "report"
    return type(value).__name__
