"""Exceptions for use in the semitree library."""


class SemitreeError(Exception):
    """Base class for all semitree errors."""

    def __init__(self, message, witness=None):
        """Store the message and an optional counterexample."""
        super().__init__(message)
        self.witness = witness


class MonoidError(SemitreeError):
    """Raise this when a monoid cannot be built from the given data."""


class NotAssociativeError(MonoidError):
    """Raise this when a multiplication table is not associative."""


class IdentityError(MonoidError):
    """Raise this when the identity laws fail."""


class MorphismError(SemitreeError):
    """Raise this when a mapping is not a monoid homomorphism."""


class StabilityError(SemitreeError):
    """Raise this when a Rees anchor or a translation does not exist."""


class OrderError(SemitreeError):
    """Raise this when an order condition fails."""


class LengthAxiomError(SemitreeError):
    """Raise this when a length table is refused."""

    def __init__(self, message, report=None, witness=None):
        """Keep the failed axiom report around."""
        super().__init__(message, witness)
        self.report = report


class TreeError(SemitreeError):
    """Raise this when a tree or an action on it is malformed."""


class TransitivityError(TreeError):
    """Raise this when a component does not act transitively."""


class SequentialError(SemitreeError):
    """Raise this when sequential maps do not fit together."""


class LabelingError(SemitreeError):
    """Raise this when a tree cannot be labelled."""


class BurnsideError(SemitreeError):
    """Raise this when a declared identity x^(p+q) = x^p fails."""


class InputError(SemitreeError):
    """Raise this when a monoid document cannot be parsed."""
