"""
Exact sparse multivariate polynomials over the rationals.

A Polynomial carries its ambient dimension d and a map from exponent tuples
to nonzero Fractions. Values are immutable; every operation returns a new
polynomial. Floating point only appears in evaluate(), which works at a
caller-chosen precision through mpmath.
"""
import logging
import math
import re
from collections import defaultdict
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Rational
from operator import add
from types import MappingProxyType

import mpmath

from errors import DimensionMismatchError, ParameterRangeError, PolynomialSyntaxError

logger = logging.getLogger(__name__)


def graded_lex_key(mono):
    """
    Sort key for graded-lex order: total degree first, then lexicographic
    """
    return (sum(mono), mono)


@lru_cache(maxsize=1024)
def monomials_of_degree(dimension, degree):
    """
    All exponent tuples of the given total degree, descending graded-lex
    """
    if dimension == 1:
        return ((degree,),)
    result = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(dimension - 1, degree - first):
            result.append((first,) + rest)
    return tuple(result)


class Polynomial:
    """
    Polynomial in x1..xd with rational coefficients.

    Supports +, -, * (by polynomials or rationals), ** and ==. Mixing
    dimensions raises DimensionMismatchError; nothing is embedded implicitly.
    """

    def __init__(self, dimension, terms=None):
        if not isinstance(dimension, int) or dimension < 1:
            raise ParameterRangeError(f"dimension must be a positive integer, got {dimension!r}")
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != dimension:
                raise DimensionMismatchError(
                    f"monomial {mono} has length {len(mono)}, expected {dimension}"
                )
            if any(e < 0 for e in mono):
                raise ParameterRangeError(f"negative exponent in {mono}")
            value = clean.get(mono, 0) + Fraction(coeff)
            if value:
                clean[mono] = value
            else:
                clean.pop(mono, None)
        self._dimension = dimension
        self._terms = clean

    @classmethod
    def _from_clean(cls, dimension, terms):
        # terms already hold nonzero Fractions keyed by tuples of the right length
        poly = cls.__new__(cls)
        poly._dimension = dimension
        poly._terms = terms
        return poly

    # constructors

    @classmethod
    def zero(cls, dimension):
        return cls(dimension)

    @classmethod
    def constant(cls, dimension, value):
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def variable(cls, dimension, index):
        """
        The coordinate x_index, 1-based
        """
        if not 1 <= index <= dimension:
            raise DimensionMismatchError(f"x{index} does not exist in dimension {dimension}")
        mono = [0] * dimension
        mono[index - 1] = 1
        return cls(dimension, {tuple(mono): 1})

    @classmethod
    def monomial(cls, dimension, exponents, coefficient=1):
        return cls(dimension, {tuple(exponents): coefficient})

    @classmethod
    def radial_square(cls, dimension):
        """
        |x|^2 = x1^2 + ... + xd^2
        """
        terms = {}
        for j in range(dimension):
            mono = [0] * dimension
            mono[j] = 2
            terms[tuple(mono)] = 1
        return cls(dimension, terms)

    @classmethod
    def from_univariate(cls, coefficients, dimension=1, index=1):
        """
        Build c0 + c1*x_index + c2*x_index^2 + ... from a low-to-high list
        """
        terms = {}
        for power, coeff in enumerate(coefficients):
            mono = [0] * dimension
            mono[index - 1] = power
            terms[tuple(mono)] = coeff
        return cls(dimension, terms)

    # accessors

    @property
    def dimension(self):
        return self._dimension

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        """
        (monomial, coefficient) pairs in descending graded-lex order
        """
        return sorted(self._terms.items(), key=lambda kv: graded_lex_key(kv[0]), reverse=True)

    def coefficient(self, mono):
        return self._terms.get(tuple(mono), Fraction(0))

    def is_zero(self):
        return not self._terms

    @property
    def degree(self):
        """
        Total degree; -1 for the zero polynomial
        """
        if not self._terms:
            return -1
        return max(sum(mono) for mono in self._terms)

    def is_homogeneous(self):
        return len({sum(mono) for mono in self._terms}) <= 1

    @cached_property
    def integer_form(self):
        """
        (integer terms, common denominator) with self == terms / denominator
        """
        denominator = 1
        for coeff in self._terms.values():
            denominator = math.lcm(denominator, coeff.denominator)
        terms = {
            mono: coeff.numerator * (denominator // coeff.denominator)
            for mono, coeff in self._terms.items()
        }
        return terms, denominator

    def l1_norm(self):
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def max_abs_coefficient(self):
        return max((abs(c) for c in self._terms.values()), default=Fraction(0))

    def univariate_coefficients(self):
        """
        Dense low-to-high coefficient list of a one-variable polynomial
        """
        if self._dimension != 1:
            raise DimensionMismatchError(
                f"univariate coefficients need dimension 1, got {self._dimension}"
            )
        if not self._terms:
            return []
        coeffs = [Fraction(0)] * (self.degree + 1)
        for (power,), coeff in self._terms.items():
            coeffs[power] = coeff
        return coeffs

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other._dimension != self._dimension:
                raise DimensionMismatchError(
                    f"dimension mismatch: {self._dimension} vs {other._dimension}"
                )
            return other
        if isinstance(other, Rational):
            return Polynomial.constant(self._dimension, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for mono, coeff in other._terms.items():
            value = terms.get(mono, 0) + coeff
            if value:
                terms[mono] = value
            else:
                terms.pop(mono, None)
        return Polynomial._from_clean(self._dimension, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_clean(
            self._dimension, {mono: -coeff for mono, coeff in self._terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, factor):
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self._dimension)
        return Polynomial._from_clean(
            self._dimension, {mono: coeff * factor for mono, coeff in self._terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return Polynomial.zero(self._dimension)
        left, left_den = self.integer_form
        right, right_den = other.integer_form
        acc = defaultdict(int)
        right_items = list(right.items())
        for mono_a, coeff_a in left.items():
            for mono_b, coeff_b in right_items:
                acc[tuple(map(add, mono_a, mono_b))] += coeff_a * coeff_b
        denominator = left_den * right_den
        terms = {mono: Fraction(value, denominator) for mono, value in acc.items() if value}
        return Polynomial._from_clean(self._dimension, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ParameterRangeError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = Polynomial.constant(self._dimension, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._dimension == other._dimension and self._terms == other._terms
        if isinstance(other, Rational):
            return self == Polynomial.constant(self._dimension, other)
        return NotImplemented

    def __hash__(self):
        # constants compare equal to scalars, so they must hash like them
        if all(not any(mono) for mono in self._terms):
            return hash(self._terms.get((0,) * self._dimension, Fraction(0)))
        return hash((self._dimension, frozenset(self._terms.items())))

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self._dimension}, {format_polynomial(self)!r})"

    # structure

    def homogeneous_component(self, degree):
        if degree < 0:
            raise ParameterRangeError(f"degree must be nonnegative, got {degree}")
        return Polynomial._from_clean(
            self._dimension,
            {mono: coeff for mono, coeff in self._terms.items() if sum(mono) == degree},
        )

    def homogeneous_parts(self):
        """
        {degree: component} for every degree carrying a nonzero term
        """
        parts = defaultdict(dict)
        for mono, coeff in self._terms.items():
            parts[sum(mono)][mono] = coeff
        return {
            degree: Polynomial._from_clean(self._dimension, terms)
            for degree, terms in sorted(parts.items())
        }

    def partial(self, index):
        """
        Derivative in x_index, 1-based
        """
        if not 1 <= index <= self._dimension:
            raise DimensionMismatchError(f"x{index} does not exist in dimension {self._dimension}")
        j = index - 1
        terms = {}
        for mono, coeff in self._terms.items():
            e = mono[j]
            if e:
                new = mono[:j] + (e - 1,) + mono[j + 1:]
                terms[new] = terms.get(new, 0) + coeff * e
        return Polynomial._from_clean(self._dimension, {m: c for m, c in terms.items() if c})

    def laplacian(self):
        terms = defaultdict(Fraction)
        for mono, coeff in self._terms.items():
            for j, e in enumerate(mono):
                if e >= 2:
                    new = mono[:j] + (e - 2,) + mono[j + 1:]
                    terms[new] += coeff * e * (e - 1)
        return Polynomial._from_clean(self._dimension, {m: c for m, c in terms.items() if c})

    def substitute_radial(self, power):
        """
        Multiply by |x|^power; power must be even and nonnegative
        """
        if not isinstance(power, int) or power < 0 or power % 2:
            raise ParameterRangeError(
                f"|x|^{power} is not a polynomial; power must be even and >= 0"
            )
        if power == 0:
            return self
        return self * radial_power(self._dimension, power // 2)

    def embed(self, dimension):
        """
        The same polynomial viewed in a higher dimension (trailing zero exponents)
        """
        if dimension < self._dimension:
            raise DimensionMismatchError(
                f"cannot embed dimension {self._dimension} into {dimension}"
            )
        pad = (0,) * (dimension - self._dimension)
        return Polynomial._from_clean(
            dimension, {mono + pad: coeff for mono, coeff in self._terms.items()}
        )

    def permute_variables(self, permutation):
        """
        Substitute x_i -> x_{permutation[i]} (1-based images, one per variable)
        """
        permutation = tuple(permutation)
        if sorted(permutation) != list(range(1, self._dimension + 1)):
            raise ParameterRangeError(f"{permutation} is not a permutation of 1..{self._dimension}")
        terms = {}
        for mono, coeff in self._terms.items():
            new = [0] * self._dimension
            for i, e in enumerate(mono):
                new[permutation[i] - 1] = e
            terms[tuple(new)] = coeff
        return Polynomial._from_clean(self._dimension, terms)

    def swap_variables(self, i, j):
        permutation = list(range(1, self._dimension + 1))
        permutation[i - 1], permutation[j - 1] = j, i
        return self.permute_variables(permutation)

    # evaluation

    def _check_point(self, point):
        if len(point) != self._dimension:
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, polynomial has dimension {self._dimension}"
            )

    def evaluate_exact(self, point):
        """
        Exact value at a rational point
        """
        self._check_point(point)
        values = [Fraction(v) for v in point]
        return _horner(self._terms, values, 0, Fraction(0))

    def evaluate(self, point, precision=53):
        """
        Horner evaluation with mpmath at `precision` bits
        """
        self._check_point(point)
        with mpmath.workprec(precision):
            values = [to_mpf(v) for v in point]
            terms = {mono: to_mpf(coeff) for mono, coeff in self._terms.items()}
            return +_horner(terms, values, 0, mpmath.mpf(0))


def to_mpf(value):
    """
    Convert a Fraction (or anything mpmath accepts) at the working precision
    """
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def _horner(terms, values, start, zero):
    if not terms:
        return zero
    if start == len(values):
        return next(iter(terms.values()))
    groups = defaultdict(dict)
    for mono, coeff in terms.items():
        groups[mono[start]][mono] = coeff
    x = values[start]
    result = zero
    for power in range(max(groups), -1, -1):
        result = result * x
        if power in groups:
            result = result + _horner(groups[power], values, start + 1, zero)
    return result


@lru_cache(maxsize=256)
def radial_power(dimension, exponent):
    """
    (|x|^2)^exponent, cached
    """
    if exponent == 0:
        return Polynomial.constant(dimension, 1)
    return radial_power(dimension, exponent - 1) * Polynomial.radial_square(dimension)


def laplacian(p):
    return p.laplacian()


def homogeneous_component(p, degree):
    return p.homogeneous_component(degree)


def evaluate(p, point, precision=53):
    return p.evaluate(point, precision)


def substitute_radial(p, power):
    return p.substitute_radial(power)


# canonical text form

_TERM = re.compile(r'([+-]?)([^+-]+)')
_NUMBER = re.compile(r'^(\d+)(?:/(\d+))?$')
_VARIABLE = re.compile(r'^x(\d+)(?:\^(\d+))?$')


def _parse_term(body, text):
    coeff = Fraction(1)
    exponents = defaultdict(int)
    for factor in body.split('*'):
        if not factor:
            raise PolynomialSyntaxError(f"empty factor in {text!r}")
        number = _NUMBER.match(factor)
        if number:
            denominator = int(number.group(2) or 1)
            if denominator == 0:
                raise PolynomialSyntaxError(f"zero denominator in {text!r}")
            coeff *= Fraction(int(number.group(1)), denominator)
            continue
        variable = _VARIABLE.match(factor)
        if variable:
            index = int(variable.group(1))
            if index == 0:
                raise PolynomialSyntaxError(f"variables are numbered from x1, got x0 in {text!r}")
            exponents[index] += int(variable.group(2) or 1)
            continue
        raise PolynomialSyntaxError(f"cannot read factor {factor!r} in {text!r}")
    return coeff, exponents


def parse_polynomial(text, dimension=None):
    """
    Parse the canonical grammar, e.g. `3/2*x1^2*x3 - x2 + 1`.

    The dimension is inferred from the highest variable index unless given;
    an index above the given dimension is a DimensionMismatchError.
    """
    if not isinstance(text, str):
        raise PolynomialSyntaxError(f"expected a string, got {type(text).__name__}")
    compact = re.sub(r'\s+', '', text)
    if not compact:
        raise PolynomialSyntaxError("empty polynomial expression")

    parsed = []
    position = 0
    for match in _TERM.finditer(compact):
        if match.start() != position:
            raise PolynomialSyntaxError(f"unexpected sign at position {position} in {text!r}")
        sign = -1 if match.group(1) == '-' else 1
        coeff, exponents = _parse_term(match.group(2), text)
        parsed.append((sign * coeff, exponents))
        position = match.end()
    if position != len(compact):
        raise PolynomialSyntaxError(f"dangling operator at the end of {text!r}")

    highest = max((max(exps) for _, exps in parsed if exps), default=0)
    if dimension is None:
        dimension = max(highest, 1)
    elif highest > dimension:
        raise DimensionMismatchError(
            f"expression mentions x{highest} but the dimension is {dimension}"
        )

    terms = defaultdict(Fraction)
    for coeff, exponents in parsed:
        mono = [0] * dimension
        for index, power in exponents.items():
            mono[index - 1] = power
        terms[tuple(mono)] += coeff
    return Polynomial(dimension, terms)


def _format_term(mono, magnitude):
    factors = []
    for index, power in enumerate(mono, start=1):
        if power == 1:
            factors.append(f"x{index}")
        elif power > 1:
            factors.append(f"x{index}^{power}")
    if magnitude != 1 or not factors:
        factors.insert(0, str(magnitude))
    return '*'.join(factors)


def format_polynomial(p):
    """
    Canonical text: descending graded-lex, `+`/`-` between terms
    """
    items = p.items()
    if not items:
        return '0'
    pieces = []
    for position, (mono, coeff) in enumerate(items):
        body = _format_term(mono, abs(coeff))
        if position == 0:
            pieces.append(('-' if coeff < 0 else '') + body)
        else:
            pieces.append((' - ' if coeff < 0 else ' + ') + body)
    return ''.join(pieces)


# seeded random polynomials

def random_homogeneous(dimension, degree, rng, low=-3, high=3, density=1.0):
    """
    Random homogeneous polynomial with integer coefficients in [low, high].
    `rng` is a numpy Generator; never returns zero.
    """
    monomials = monomials_of_degree(dimension, degree)
    terms = {}
    for mono in monomials:
        if density < 1.0 and rng.random() >= density:
            continue
        value = int(rng.integers(low, high + 1))
        if value:
            terms[mono] = value
    if not terms:
        terms[monomials[int(rng.integers(0, len(monomials)))]] = 1
    return Polynomial(dimension, terms)


def random_polynomial(dimension, degree, rng, low=-3, high=3, density=1.0):
    """
    Sum of random homogeneous parts in every degree 0..degree
    """
    result = Polynomial.zero(dimension)
    for k in range(degree + 1):
        result = result + random_homogeneous(dimension, k, rng, low, high, density)
    return result
