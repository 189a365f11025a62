"""Exception hierarchy for the residua verifier."""


class ResiduaError(Exception):
    """Base class for every error the verifier raises on bad input or limits."""


class ParseError(ResiduaError):
    """The poset description is malformed."""


class CycleDetected(ResiduaError):
    """The cover relation is not antisymmetric after closure."""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        path = " < ".join(self.cycle + self.cycle[:1])
        super().__init__(f"Cover relation contains a cycle: {path}")


class DuplicateElement(ResiduaError):
    """An element identifier occurs twice."""


class UnknownElementReference(ResiduaError):
    """A cover or operation entry names an element that is not in the carrier."""


class DimensionMismatch(ResiduaError):
    """The unary operation does not act on the poset's carrier."""


class CarrierTooLarge(ResiduaError):
    """The carrier exceeds a configured size cap."""


class UnboundedPoset(ResiduaError):
    """A predicate or construction needs 0 and 1 but the poset lacks one of them."""


class NotALattice(ResiduaError):
    """Some pair of elements has no join or no meet."""


class SizeCapExceeded(ResiduaError):
    """Requested enumeration size is above the hard cap."""


class UnknownPredicate(ResiduaError):
    """A predicate name is not in the vocabulary."""


class UnknownClaim(ResiduaError):
    """A claim name cannot be parsed as 'antecedent=>consequent'."""
