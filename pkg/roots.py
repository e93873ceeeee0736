"""
Dense univariate helpers over the rationals and certified root isolation by
Sturm sequences. Polynomials here are low-to-high coefficient lists.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from errors import ParameterRangeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZeroBracket:
    """
    (lower, upper] containing exactly one root when certified
    """
    lower: Fraction
    upper: Fraction
    certified: bool
    exact: Optional[Fraction] = None

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ParameterRangeError(f"bracket needs lower < upper, got [{self.lower}, {self.upper}]")

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def midpoint(self):
        return (self.lower + self.upper) / 2

    def contains(self, value):
        return self.lower <= value <= self.upper

    def overlaps(self, other):
        return self.lower <= other.upper and other.lower <= self.upper

    def squared(self):
        """
        Bracket of x^2 for a bracket of nonnegative x
        """
        if self.lower < 0:
            raise ParameterRangeError("squaring needs a nonnegative bracket")
        exact = self.exact * self.exact if self.exact is not None else None
        return ZeroBracket(self.lower ** 2, self.upper ** 2, self.certified, exact)


def trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def evaluate(coeffs, x):
    result = Fraction(0)
    for c in reversed(coeffs):
        result = result * x + c
    return result


def derivative(coeffs):
    return [c * k for k, c in enumerate(coeffs)][1:]


def remainder(numerator, divisor):
    numerator = trim(numerator)
    divisor = trim(divisor)
    if not divisor:
        raise ZeroDivisionError("polynomial division by zero")
    lead = divisor[-1]
    while len(numerator) >= len(divisor):
        factor = numerator[-1] / lead
        shift = len(numerator) - len(divisor)
        for i, c in enumerate(divisor):
            numerator[shift + i] -= factor * c
        numerator.pop()
        numerator = trim(numerator)
    return numerator


def sturm_sequence(coeffs):
    """
    p, p', then negated remainders; each member rescaled by a positive factor
    """
    first = trim(Fraction(c) for c in coeffs)
    if len(first) < 2:
        raise ParameterRangeError("Sturm sequences need a polynomial of degree >= 1")
    sequence = [first, trim(derivative(first))]
    while True:
        rest = remainder(sequence[-2], sequence[-1])
        if not rest:
            break
        scale = abs(rest[-1])
        sequence.append([-c / scale for c in rest])
    return sequence


def sign_variations(sequence, x):
    signs = []
    for member in sequence:
        value = evaluate(member, x)
        if value:
            signs.append(value > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(sequence, a, b):
    """
    Number of distinct real roots in (a, b]
    """
    return sign_variations(sequence, a) - sign_variations(sequence, b)


def root_bound(coeffs):
    """
    Cauchy bound: every root has |x| < 1 + max |c_i / c_n|
    """
    coeffs = trim(coeffs)
    lead = coeffs[-1]
    return 1 + max((abs(c / lead) for c in coeffs[:-1]), default=Fraction(0))


def isolate_smallest_root(coeffs, lower, upper, width):
    """
    Bracket the smallest root in (lower, upper] down to the requested width.

    Bisection keeps count(lower, lo] == 0 and count(lo, hi] >= 1, so the
    bracket always holds the first root.
    """
    width = Fraction(width)
    if width <= 0:
        raise ParameterRangeError(f"bracket width must be positive, got {width}")
    lower, upper = Fraction(lower), Fraction(upper)
    sequence = sturm_sequence(coeffs)
    v_lower = sign_variations(sequence, lower)
    v_upper = sign_variations(sequence, upper)
    if v_lower - v_upper < 1:
        raise ParameterRangeError(f"no root in ({lower}, {upper}]")

    lo, hi, v_lo = lower, upper, v_lower
    steps = 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        v_mid = sign_variations(sequence, mid)
        if v_lo - v_mid >= 1:
            hi = mid
        else:
            lo, v_lo = mid, v_mid
        steps += 1

    first = sequence[0]
    exact = hi if evaluate(first, hi) == 0 else None
    certified = v_lo == v_lower and v_lo - sign_variations(sequence, hi) == 1
    logger.debug("isolated root in (%s, %s] after %d bisection steps", lo, hi, steps)
    return ZeroBracket(lo, hi, certified, exact)
