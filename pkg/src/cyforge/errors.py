"""Exception hierarchy. Every domain failure derives from ``DomainError``."""


class DomainError(Exception):
    """A mathematical precondition failed for the given input."""


class NotFullDimensional(DomainError):
    pass


class OriginNotInterior(DomainError):
    pass


class NonIntegralDual(DomainError):
    """The polar dual has a non-lattice vertex, so the input is not reflexive."""


class NotReflexive(DomainError):
    pass


class WrongDimension(DomainError):
    pass


class NotAdmissible(DomainError):
    pass


class NotSmoothable(DomainError):
    pass


class NonIntegralInvariant(DomainError):
    pass


class NoOperatorFound(DomainError):
    pass


class AmbiguousFit(DomainError):
    pass


class NonMUMPoint(DomainError):
    pass


class SingularNormalization(DomainError):
    pass


class NonIntegralInstanton(DomainError):
    pass
