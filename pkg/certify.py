"""
Certified rational enclosures built on mpmath interval arithmetic.

Every function returns (lower, upper) Fractions that provably contain the
true value. Comparisons pair the lower end of one side with the upper end
of the other.
"""
import threading
from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv

from errors import ParameterRangeError

DEFAULT_PRECISION = 128

_PRECISION_LOCK = threading.RLock()


@contextmanager
def interval_precision(bits):
    """
    Run a block with mpmath.iv at `bits` of working precision
    """
    with _PRECISION_LOCK:
        saved = iv.prec
        iv.prec = bits
        try:
            yield iv
        finally:
            iv.prec = saved


def _raw_to_fraction(raw):
    sign, mantissa, exponent, bitcount = raw
    if not mantissa:
        if exponent:
            raise ArithmeticError("interval endpoint is infinite or nan")
        return Fraction(0)
    value = Fraction(mantissa) * (Fraction(2) ** exponent)
    return -value if sign else value


def interval_bounds(x):
    """
    Rational endpoints of an mpmath interval
    """
    lower, upper = iv.mpf(x)._mpi_
    return _raw_to_fraction(lower), _raw_to_fraction(upper)


def to_interval(value):
    """
    Tight interval around a rational (call inside interval_precision)
    """
    q = Fraction(value)
    return iv.mpf(q.numerator) / q.denominator


def pi_enclosure(precision=DEFAULT_PRECISION):
    with interval_precision(precision):
        return interval_bounds(iv.mpf(iv.pi))


def sqrt_enclosure(value, precision=DEFAULT_PRECISION):
    value = Fraction(value)
    if value < 0:
        raise ParameterRangeError(f"square root of a negative rational {value}")
    with interval_precision(precision):
        return interval_bounds(iv.sqrt(to_interval(value)))


def sin_pi_fraction(q, precision=DEFAULT_PRECISION):
    """
    Enclosure of sin(q * pi) for rational q
    """
    q = Fraction(q)
    with interval_precision(precision):
        return interval_bounds(iv.sin(iv.pi * to_interval(q)))


def cos_pi_fraction(q, precision=DEFAULT_PRECISION):
    q = Fraction(q)
    with interval_precision(precision):
        return interval_bounds(iv.cos(iv.pi * to_interval(q)))


def pi_squared_over(denominator, precision=DEFAULT_PRECISION):
    """
    Enclosure of pi^2 / denominator for a positive rational denominator
    """
    denominator = Fraction(denominator)
    if denominator <= 0:
        raise ParameterRangeError("denominator must be positive")
    lower, upper = pi_enclosure(precision)
    return lower * lower / denominator, upper * upper / denominator


def theorem_bound(degree, dimension, precision=DEFAULT_PRECISION):
    """
    pi^2 / (4 (degree + 2d + 1)^2), valid for every polynomial degree
    """
    return pi_squared_over(4 * (degree + 2 * dimension + 1) ** 2, precision)


def even_index_bound(degree, dimension, precision=DEFAULT_PRECISION):
    """
    pi^2 / (4 (degree + 2d)^2), the constant for even degrees
    """
    return pi_squared_over(4 * (degree + 2 * dimension) ** 2, precision)


def proof_bound(m, dimension, precision=DEFAULT_PRECISION):
    """
    pi^2 / (16 (m + d)^2) for blocks of polynomial degree 2m
    """
    return pi_squared_over(16 * (m + dimension) ** 2, precision)


def certainly_at_least(lower_left, upper_right):
    return Fraction(lower_left) >= Fraction(upper_right)
