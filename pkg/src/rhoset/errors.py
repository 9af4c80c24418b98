"""Exceptions raised by the constructors; each maps to a CLI exit code."""


class ConstructionError(Exception):
    exit_code = 1


class VerificationError(ConstructionError):
    """A certificate failed re-simulation.  Always a bug."""

    exit_code = 1


class Unrepresentable(ConstructionError):
    """No recurrence with this characteristic polynomial reaches the target."""

    exit_code = 2


class ImpossibleNonzero(ConstructionError):
    """The target is reachable, but never with all residues nonzero."""

    exit_code = 2


class NoPrimitiveDivisor(ConstructionError):
    exit_code = 2


class BudgetExceeded(ConstructionError):
    exit_code = 3

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"factoring budget exhausted at index {index}")
