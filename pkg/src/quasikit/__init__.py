"""Finite fuzzy presheaves: limits, the subobject classifier, exponentials,
slices, unions and the ¬¬ topology, plus a cube rewrite step."""

from .category import FiniteCategory, build_schema, validate_category
from .errors import QuasikitError
from .lattice import HeytingAlgebra, chain, powerset, validate_heyting
from .presheaf import (
    FuzzyMorphism,
    FuzzyPresheaf,
    Subobject,
    compose,
    fuzzy_presheaf,
    identity,
    make_subobject,
    validate_fuzzy_morphism,
)
from .serialize import load_fixture, parse_text, serialize

__version__ = "0.1.0"

__all__ = [
    "FiniteCategory",
    "FuzzyMorphism",
    "FuzzyPresheaf",
    "HeytingAlgebra",
    "QuasikitError",
    "Subobject",
    "build_schema",
    "chain",
    "compose",
    "fuzzy_presheaf",
    "identity",
    "load_fixture",
    "make_subobject",
    "parse_text",
    "powerset",
    "serialize",
    "validate_category",
    "validate_fuzzy_morphism",
    "validate_heyting",
]
