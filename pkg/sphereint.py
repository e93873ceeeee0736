"""
Exact integrals over the unit sphere S^{d-1} with surface measure.

Every nonzero integral of a monomial in fixed dimension d is a rational
multiple of the same power of pi, so inner products are tracked as
PiScaled values: coefficient * pi^(twice_exponent/2).
"""
import math
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from operator import add

import mpmath

from errors import DimensionMismatchError, NormRatioError, ParameterRangeError
from polycore import to_mpf

_SERIALIZED = re.compile(r'^\((-?\d+(?:/\d+)?)\) \* pi\^\((\d+)/2\)$')


@dataclass(frozen=True)
class PiScaled:
    coefficient: Fraction
    twice_exponent: int = 0

    def __post_init__(self):
        coefficient = Fraction(self.coefficient)
        twice_exponent = int(self.twice_exponent)
        if twice_exponent < 0:
            raise ParameterRangeError("pi exponent must be nonnegative")
        if coefficient == 0:
            twice_exponent = 0
        object.__setattr__(self, 'coefficient', coefficient)
        object.__setattr__(self, 'twice_exponent', twice_exponent)

    @classmethod
    def from_string(cls, text):
        match = _SERIALIZED.match(text.strip())
        if not match:
            raise ValueError(f"not a PiScaled value: {text!r}")
        return cls(Fraction(match.group(1)), int(match.group(2)))

    def is_zero(self):
        return self.coefficient == 0

    @property
    def sign(self):
        return (self.coefficient > 0) - (self.coefficient < 0)

    def _same_power(self, other):
        if self.is_zero():
            return other.twice_exponent
        if other.is_zero() or other.twice_exponent == self.twice_exponent:
            return self.twice_exponent
        raise ValueError(
            f"cannot add pi^({self.twice_exponent}/2) and pi^({other.twice_exponent}/2) exactly"
        )

    def __add__(self, other):
        if not isinstance(other, PiScaled):
            return NotImplemented
        power = self._same_power(other)
        return PiScaled(self.coefficient + other.coefficient, power)

    def __neg__(self):
        return PiScaled(-self.coefficient, self.twice_exponent)

    def __sub__(self, other):
        if not isinstance(other, PiScaled):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PiScaled):
            return PiScaled(
                self.coefficient * other.coefficient,
                self.twice_exponent + other.twice_exponent,
            )
        if isinstance(other, Rational):
            return PiScaled(self.coefficient * other, self.twice_exponent)
        return NotImplemented

    __rmul__ = __mul__

    def ratio(self, other):
        """
        self / other as an exact rational; the pi powers must cancel
        """
        if other.is_zero():
            raise ZeroDivisionError("ratio by a zero PiScaled value")
        if self.is_zero():
            return Fraction(0)
        if self.twice_exponent != other.twice_exponent:
            raise NormRatioError(
                f"ratio of pi^({self.twice_exponent}/2) and pi^({other.twice_exponent}/2) is irrational"
            )
        return self.coefficient / other.coefficient

    def to_mpf(self, precision=53):
        with mpmath.workprec(precision):
            return to_mpf(self.coefficient) * mpmath.pi ** (mpmath.mpf(self.twice_exponent) / 2)

    def __str__(self):
        return f"({self.coefficient}) * pi^({self.twice_exponent}/2)"


@lru_cache(maxsize=1024)
def _gamma_half(j):
    """
    Gamma(j + 1/2) / sqrt(pi) = (2j)! / (4^j j!)
    """
    return Fraction(math.factorial(2 * j), 4 ** j * math.factorial(j))


def _pi_twice_exponent(dimension):
    return dimension - dimension % 2


@lru_cache(maxsize=200000)
def _moment(mono):
    # rational part of the sphere integral; the pi power depends on len(mono) only
    if any(e & 1 for e in mono):
        return Fraction(0)
    d = len(mono)
    halves = [e // 2 for e in mono]
    numerator = 2 * math.prod(_gamma_half(k) for k in halves)
    total = sum(halves)
    if d % 2 == 0:
        denominator = Fraction(math.factorial(total + d // 2 - 1))
    else:
        denominator = _gamma_half(total + (d - 1) // 2)
    return numerator / denominator


def monomial_sphere_integral(mono, dimension):
    """
    Integral of x^mono over S^{d-1}: 2 prod Gamma(b_i) / Gamma(sum b_i), b_i = (e_i + 1)/2
    """
    mono = tuple(mono)
    if dimension < 2:
        raise ParameterRangeError(f"sphere integrals need d >= 2, got {dimension}")
    if len(mono) != dimension:
        raise DimensionMismatchError(f"monomial {mono} does not have length {dimension}")
    return PiScaled(_moment(mono), _pi_twice_exponent(dimension))


def _parity(mono):
    return tuple(e & 1 for e in mono)


def inner_product(f, g):
    """
    <f, g> on S^{d-1}, exact.

    Terms are paired only within the same parity class, since every other
    product integrates to zero.
    """
    if f.dimension != g.dimension:
        raise DimensionMismatchError(f"dimension mismatch: {f.dimension} vs {g.dimension}")
    d = f.dimension
    if d < 2:
        raise ParameterRangeError(f"sphere integrals need d >= 2, got {d}")
    f_terms, f_den = f.integer_form
    g_terms, g_den = g.integer_form

    by_parity = defaultdict(list)
    for mono, coeff in g_terms.items():
        by_parity[_parity(mono)].append((mono, coeff))

    acc = defaultdict(int)
    for mono, coeff in f_terms.items():
        for other, other_coeff in by_parity.get(_parity(mono), ()):
            acc[tuple(map(add, mono, other))] += coeff * other_coeff

    total = sum((value * _moment(mono) for mono, value in acc.items() if value), Fraction(0))
    return PiScaled(total / (f_den * g_den), _pi_twice_exponent(d))


def norm_sq(f):
    return inner_product(f, f)


def rayleigh_quotient(weight, f):
    """
    <weight f, f> / <f, f>, exactly rational
    """
    if f.is_zero():
        raise ParameterRangeError("Rayleigh quotient of the zero polynomial")
    return inner_product(weight * f, f).ratio(norm_sq(f))
