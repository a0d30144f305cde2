"""Exception types shared by all modules."""


class ParameterError(ValueError):
    """Rejected construction parameters (bad prime, bad degree, bad triple, bad syntax)."""


class InvalidUnitalParameters(ValueError):
    """(alpha, beta) whose discriminant 4*N(alpha) + (conj(beta)-beta)^2 is a square in GF(q)."""

    def __init__(self, message, discriminant):
        super().__init__(message)
        self.discriminant = discriminant


class DegenerateInput(ValueError):
    """Geometric operation called with coincident or otherwise degenerate arguments."""


class DegenerateConfiguration(ValueError):
    """Point configuration that does not pin down a unique conic (nullity > 1)."""


class StructuralViolation(RuntimeError):
    """A constructed point set fails the unital axiom; signals a construction bug.

    Everything downstream assumes every line meets the unital in 1 or q+1
    points, so this aborts the run instead of producing garbage censuses.
    """


class TheoremViolation(RuntimeError):
    """An exhaustively checked structural claim failed; this is a test-failure signal."""


class InternalConsistencyError(RuntimeError):
    """Two supposedly equivalent evaluation routes disagreed."""
