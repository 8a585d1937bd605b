"""Exception hierarchy.

The split matters for the CLI: structural problems (unparseable or
malformed declared data) map to exit code 2, everything else that a
user can trigger maps to exit code 1.
"""


class BasedivError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(BasedivError):
    """Malformed data: non-square or asymmetric Gram matrix, vector of the
    wrong length, non-integer entries, bad JSON payload shape."""


class DomainError(BasedivError):
    """A documented precondition on an operation's inputs was violated."""


class IntegralityError(DomainError):
    """A reflection scalar 2(d,a)/q(d) is not an integer, so the proposed
    root does not act integrally on the lattice."""


class CapabilityError(BasedivError):
    """Input exceeds a hard guard (rank or search-box limits) that the
    exhaustive routines refuse to cross."""


class HypothesisError(BasedivError):
    """Classification was requested on a context whose required hypotheses
    (strict RR monotonicity, Lagrangian-fibration flag) are not certified."""


class ConsistencyError(BasedivError):
    """An invariant that should hold for valid declared data failed at
    runtime; the inputs are mutually inconsistent, or a result that must
    be an integer is not."""
