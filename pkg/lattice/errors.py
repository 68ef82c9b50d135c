"""Exceptions raised by the lattice modules."""


class LatticeError(ValueError):
    """Base class for rejected inputs."""


class NotPrimeError(LatticeError):
    """An integer passed where a prime was required."""


class IndexingMismatchError(LatticeError):
    """Operands built over different prime indexings."""


class PreconditionError(LatticeError):
    """An operation was called outside its precondition (e.g. a non-strict pair)."""


class InvalidPosetError(LatticeError):
    """Relation is not a partial order or refers to unknown elements."""


class InvalidWitnessError(LatticeError):
    """Degenerate witness parameters or an element outside the localization."""


class InvariantBreach(RuntimeError):
    """Internal contradiction; indicates a bug rather than bad input."""
