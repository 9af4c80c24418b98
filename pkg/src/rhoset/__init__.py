"""Second-order recurrences x_n = a1*x_{n-1} + x_{n-2} with a prescribed
number of residues modulo m, and the matching fractional-part orbits."""

from .constructor import Certificate, ConstructionPath, construct
from .errors import (
    BudgetExceeded,
    ConstructionError,
    ImpossibleNonzero,
    Unrepresentable,
    VerificationError,
)
from .fractional import verify_limit_points, xi_from_certificate
from .recurrence import RecurrenceInstance, orbit_stats, reverse_instance

__all__ = [
    "BudgetExceeded",
    "Certificate",
    "ConstructionError",
    "ConstructionPath",
    "ImpossibleNonzero",
    "RecurrenceInstance",
    "Unrepresentable",
    "VerificationError",
    "construct",
    "orbit_stats",
    "reverse_instance",
    "verify_limit_points",
    "xi_from_certificate",
]
