"""
Exception hierarchy shared by the library, the CLI and the HTTP surface.

Every error carries the process exit code the CLI reports for it. Failed
certifications are never raised; they show up as report rows instead.
"""

EXIT_OK = 0
EXIT_CERTIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_SYNTAX = 3
EXIT_RANGE = 4
EXIT_QUADRIC = 5
EXIT_INTERNAL = 70
EXIT_IO = 74


class HarmQuadError(Exception):
    """
    Base class for all harmquad errors
    """
    exit_code = EXIT_INTERNAL
    http_status = 500


class UsageError(HarmQuadError):
    """
    Unknown verb, missing flag or malformed command line
    """
    exit_code = EXIT_USAGE
    http_status = 400


class PolynomialSyntaxError(HarmQuadError, ValueError):
    """
    Text does not follow the canonical polynomial grammar
    """
    exit_code = EXIT_SYNTAX
    http_status = 400


class DimensionMismatchError(HarmQuadError, ValueError):
    exit_code = EXIT_RANGE
    http_status = 400


class ParameterRangeError(HarmQuadError, ValueError):
    """
    Numeric parameter outside the range an operation accepts
    """
    exit_code = EXIT_RANGE
    http_status = 400


class QuadricError(HarmQuadError, ValueError):
    """
    Expression is not a nonhyperbolic quadric; the message names the violated clause
    """
    exit_code = EXIT_QUADRIC
    http_status = 422


class ParityError(HarmQuadError):
    """
    An even Jacobi polynomial showed an odd-degree term
    """


class SingularSystemError(HarmQuadError):
    """
    Exact elimination met a singular matrix where the theory promises invertibility
    """


class NormRatioError(HarmQuadError):
    """
    Basis norms of one (s, l) family are inconsistent with the recurrence
    """


class DecompositionError(HarmQuadError):
    """
    A Fischer or Gauss decomposition failed its exact post-check
    """


class OddLabelError(ParameterRangeError):
    """
    Jacobi-zero route asked for an odd label; carries the interlacing lower bound
    from the even block below
    """

    def __init__(self, message, interlacing_bound=None):
        super().__init__(message)
        self.interlacing_bound = interlacing_bound
