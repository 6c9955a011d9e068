"""Exception hierarchy.

Every error carries a machine-readable ``code`` (the class name by default)
and the process exit status the command-line front end maps it to.
"""


class RatDiagError(Exception):
    exit_code = 1

    @property
    def code(self):
        return type(self).__name__


# -- model parsing (exit 1) --------------------------------------------------

class ModelSyntaxError(RatDiagError, ValueError):
    pass


class BadRational(ModelSyntaxError):
    pass


class EmptyFactors(ModelSyntaxError):
    pass


class ZeroFactor(ModelSyntaxError):
    pass


class ZeroNumerator(ModelSyntaxError):
    pass


# -- geometry ----------------------------------------------------------------

class HypothesisFailure(RatDiagError):
    """The model violates a hypothesis needed by the requested computation."""

    exit_code = 2


class ParallelLines(HypothesisFailure):
    pass


class ConcurrentTriple(HypothesisFailure):
    pass


class VertexNotOnLine(RatDiagError, ValueError):
    pass


class ZeroDirection(RatDiagError, ValueError):
    pass


# -- asymptotics (exit 3) ----------------------------------------------------

class DirectionError(RatDiagError):
    exit_code = 3


class BoundaryDirection(DirectionError):
    pass


class DegenerateNumerator(DirectionError):
    pass


class DegenerateDenominator(DirectionError):
    pass


class VanishingConstant(DirectionError):
    pass


# -- verification (exit 4) ---------------------------------------------------

class VerificationError(RatDiagError):
    exit_code = 4


class TooFewRows(VerificationError, ValueError):
    pass


class ZeroCoefficient(VerificationError):
    pass
