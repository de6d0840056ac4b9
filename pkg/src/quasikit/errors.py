"""Exception hierarchy.

Every error carries a ``code`` equal to its class name; the CLI reports it
verbatim so that scripted callers can match on it.
"""


class QuasikitError(Exception):
    """Base class for all library errors."""

    exit_code = 1

    @property
    def code(self):
        return type(self).__name__


# lattice
class NotPoset(QuasikitError):
    pass


class NotLattice(QuasikitError):
    pass


class NotResiduated(QuasikitError):
    pass


class UnknownElement(QuasikitError):
    pass


# base category
class MissingIdentity(QuasikitError):
    pass


class NotAssociative(QuasikitError):
    pass


class CompositionGap(QuasikitError):
    pass


class UnknownObject(QuasikitError):
    pass


class UnsupportedKind(QuasikitError):
    pass


class BadParams(QuasikitError):
    pass


# presheaves and morphisms
class ActionGap(QuasikitError):
    pass


class IdentityViolated(QuasikitError):
    pass


class CompositionViolated(QuasikitError):
    pass


class MembershipGap(QuasikitError):
    pass


class NotNatural(QuasikitError):
    pass


class MembershipDecreases(QuasikitError):
    pass


class LabelMismatch(QuasikitError):
    pass


class ObjectMismatch(QuasikitError):
    pass


class NotMono(QuasikitError):
    pass


class NotRegular(QuasikitError):
    pass


# constructions
class ActionNotWellDefined(QuasikitError):
    pass


class EnumerationCap(QuasikitError):
    exit_code = 3


class ShapeMismatch(QuasikitError):
    pass


class AnchorMismatch(QuasikitError):
    pass


class NotCommutative(QuasikitError):
    pass


class UnsupportedSchema(QuasikitError):
    pass


class AxiomViolated(QuasikitError):
    pass


# rewriting
class BottomNotPushout(QuasikitError):
    pass


class InvalidMorphism(QuasikitError):
    pass


class MediatorNotUnique(QuasikitError):
    pass


class FrontFaceNotPullback(QuasikitError):
    pass


class NoMatch(QuasikitError):
    pass


# exchange format
class ParseError(QuasikitError):
    pass


class UnresolvedRef(QuasikitError):
    pass
