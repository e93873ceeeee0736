"""
Symmetric Jacobi polynomials P_n^{(alpha, alpha)} with rational alpha.

Built from the three-term recurrence x P_n = a_n P_{n+1} + g_n P_{n-1},
P_0 = 1, P_1 = (alpha + 1) x. Zeros are isolated with Sturm sequences and
compared against the lower bound pi / (4 sqrt((alpha + 1/2 + n)(n + 2)))
for the first positive zero of P_{2n}.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

import certify
import roots
from errors import ParameterRangeError, ParityError
from polycore import Polynomial
from roots import ZeroBracket

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
DEFAULT_ZERO_WIDTH = Fraction(1, 2 ** 64)
ALPHA_GRID = tuple(Fraction(a) for a in ('-1/2', '0', '1/2', '1', '3/2', '5/2'))
LAMBDA_GRID = tuple(Fraction(v) for v in ('1/10', '1/2', '1', '2', '4'))

__all__ = [
    'ZeroBracket', 'RecurrenceCoeffs', 'SquaredRecurrenceCoeffs', 'ChebyshevReport',
    'recurrence_coeffs', 'jacobi_poly', 'squared_recurrence', 'even_substitution',
    'first_positive_zero', 'first_positive_zero_of_degree', 'elbert_lower_bound',
    'chebyshev_poly', 'chebyshev_cross_check', 'sin_inequality_check',
]


def _check_alpha(alpha):
    alpha = Fraction(alpha)
    if alpha <= -1:
        raise ParameterRangeError(f"alpha must exceed -1, got {alpha}")
    return alpha


@dataclass(frozen=True)
class RecurrenceCoeffs:
    n: int
    alpha: Fraction
    a_n: Fraction
    g_n: Fraction


@dataclass(frozen=True)
class SquaredRecurrenceCoeffs:
    n: int
    alpha: Fraction
    a_tilde: Fraction
    b_tilde: Fraction
    g_tilde: Fraction


@lru_cache(maxsize=4096)
def recurrence_coeffs(n, alpha):
    """
    a_n = (n+1)(n+2a+1) / ((2n+2a+1)(n+a+1)),  g_n = (n+a) / (2n+2a+1).

    n = 0 uses a_0 = 1/(a+1), g_0 = 0, which reproduces P_1 = (a+1) x and
    avoids the 0/0 of the general formula at a = -1/2.
    """
    alpha = _check_alpha(alpha)
    if n < 0:
        raise ParameterRangeError(f"recurrence index must be >= 0, got {n}")
    if n == 0:
        return RecurrenceCoeffs(0, alpha, 1 / (alpha + 1), Fraction(0))
    a_n = Fraction((n + 1) * (n + 2 * alpha + 1)) / ((2 * n + 2 * alpha + 1) * (n + alpha + 1))
    g_n = (n + alpha) / (2 * n + 2 * alpha + 1)
    return RecurrenceCoeffs(n, alpha, a_n, g_n)


@lru_cache(maxsize=256)
def _jacobi_dense(n, alpha):
    if n < 0:
        raise ParameterRangeError(f"degree must be >= 0, got {n}")
    previous = (Fraction(1),)
    if n == 0:
        return previous
    current = (Fraction(0), alpha + 1)
    for k in range(1, n):
        rc = recurrence_coeffs(k, alpha)
        shifted = (Fraction(0),) + current
        padded = previous + (Fraction(0),) * (len(shifted) - len(previous))
        following = tuple((x - rc.g_n * y) / rc.a_n for x, y in zip(shifted, padded))
        previous, current = current, following
    return current


def jacobi_coefficients(n, alpha):
    """
    Dense low-to-high coefficients of P_n^{(alpha, alpha)}
    """
    return list(_jacobi_dense(n, _check_alpha(alpha)))


def jacobi_poly(n, alpha):
    return Polynomial.from_univariate(jacobi_coefficients(n, alpha))


def jacobi_value_at_one(n, alpha):
    return sum(jacobi_coefficients(n, alpha), Fraction(0))


def squared_recurrence(n, alpha):
    """
    Coefficients of x^2 P_n = a~ P_{n+2} + b~ P_n + g~ P_{n-2}.
    Lower terms that do not exist for n in {0, 1} are truncated to zero.
    """
    alpha = _check_alpha(alpha)
    if n < 0:
        raise ParameterRangeError(f"index must be >= 0, got {n}")
    here = recurrence_coeffs(n, alpha)
    after = recurrence_coeffs(n + 1, alpha)
    if n >= 1:
        before = recurrence_coeffs(n - 1, alpha)
        a_before, g_before = before.a_n, before.g_n
    else:
        a_before, g_before = Fraction(0), Fraction(0)
    return SquaredRecurrenceCoeffs(
        n=n,
        alpha=alpha,
        a_tilde=here.a_n * after.a_n,
        b_tilde=here.a_n * after.g_n + here.g_n * a_before,
        g_tilde=here.g_n * g_before,
    )


def squared_recurrence_residual(n, alpha):
    """
    x^2 P_n - (a~ P_{n+2} + b~ P_n + g~ P_{n-2}); the zero polynomial when the identity holds
    """
    c = squared_recurrence(n, alpha)
    x = Polynomial.variable(1, 1)
    residual = x * x * jacobi_poly(n, alpha) - c.a_tilde * jacobi_poly(n + 2, alpha) \
        - c.b_tilde * jacobi_poly(n, alpha)
    if n >= 2:
        residual = residual - c.g_tilde * jacobi_poly(n - 2, alpha)
    return residual


def even_substitution(n, alpha):
    """
    r_n(y) with r_n(x^2) = P_{2n}(x)
    """
    coeffs = jacobi_coefficients(2 * n, alpha)
    odd = [power for power, c in enumerate(coeffs) if power % 2 and c]
    if odd:
        raise ParityError(f"P_{2 * n} with alpha={alpha} has odd-degree terms {odd}")
    return Polynomial.from_univariate(coeffs[::2])


def substitute_square(r):
    """
    r(y) -> r(x^2) for a univariate polynomial
    """
    coeffs = r.univariate_coefficients()
    spread = []
    for c in coeffs:
        spread.extend([c, Fraction(0)])
    return Polynomial.from_univariate(spread[:-1] if spread else [])


def even_substitution_residual(n, alpha):
    """
    y r_n - (a~_{2n} r_{n+1} + b~_{2n} r_n + g~_{2n} r_{n-1})
    """
    c = squared_recurrence(2 * n, alpha)
    y = Polynomial.variable(1, 1)
    residual = y * even_substitution(n, alpha) - c.a_tilde * even_substitution(n + 1, alpha) \
        - c.b_tilde * even_substitution(n, alpha)
    if n >= 1:
        residual = residual - c.g_tilde * even_substitution(n - 1, alpha)
    return residual


def first_positive_zero_of_degree(degree, alpha, width=DEFAULT_ZERO_WIDTH):
    """
    Certified bracket of the smallest positive zero of P_degree, for any degree >= 1.
    All zeros lie in (-1, 1), so the Sturm count runs on (0, 1].
    """
    alpha = _check_alpha(alpha)
    if degree < 1:
        raise ParameterRangeError(f"P_{degree} has no zeros")
    return roots.isolate_smallest_root(jacobi_coefficients(degree, alpha), 0, 1, width)


def first_positive_zero(n, alpha, width=DEFAULT_ZERO_WIDTH):
    """
    Certified bracket of the first positive zero of P_{2n}
    """
    alpha = Fraction(alpha)
    if n < 1:
        raise ParameterRangeError(f"first_positive_zero needs n >= 1, got {n}")
    if alpha < -HALF:
        raise ParameterRangeError(f"first_positive_zero needs alpha >= -1/2, got {alpha}")
    if Fraction(width) <= 0:
        raise ParameterRangeError(f"bracket width must be positive, got {width}")
    return first_positive_zero_of_degree(2 * n, alpha, width)


def elbert_formula(n, alpha, precision=certify.DEFAULT_PRECISION):
    """
    Enclosure of pi / (4 sqrt((alpha + 1/2 + n)(n + 2))) with no range check
    """
    quantity = (Fraction(alpha) + HALF + n) * (n + 2)
    if quantity <= 0:
        raise ParameterRangeError(f"(alpha + 1/2 + n)(n + 2) must be positive for n={n}, alpha={alpha}")
    pi_lower, pi_upper = certify.pi_enclosure(precision)
    root_lower, root_upper = certify.sqrt_enclosure(quantity, precision)
    return pi_lower / (4 * root_upper), pi_upper / (4 * root_lower)


def elbert_lower_bound(n, alpha, precision=certify.DEFAULT_PRECISION):
    """
    Rational lower bound of pi / (4 sqrt((alpha + 1/2 + n)(n + 2))), for n >= 3 and alpha >= -1/2
    """
    alpha = Fraction(alpha)
    if n < 3:
        raise ParameterRangeError(
            f"the zero bound is stated for n >= 3, got n={n}; use the exact zero instead"
        )
    if alpha < -HALF:
        raise ParameterRangeError(f"the zero bound needs alpha >= -1/2, got {alpha}")
    return elbert_formula(n, alpha, precision)[0]


def elbert_chain_check(n):
    """
    The two rational steps behind the bound:
    n >= (8n^2+1)/(8n+2) and (8n^2+1)/((8n+2)(4n+2)^2) >= 1/(16(n+2))
    """
    ratio = Fraction(8 * n * n + 1, 8 * n + 2)
    first = n >= ratio
    second = ratio / (4 * n + 2) ** 2 >= Fraction(1, 16 * (n + 2))
    return {'n': n, 'index_dominates': first, 'scaled_chain': second, 'passed': first and second}


def monotonicity_probe(n, lambdas=LAMBDA_GRID, tolerance=1e-9, width=Fraction(1, 2 ** 60)):
    """
    Sample lambda -> sqrt(lambda + (8n^2+1)/(8n+2)) * x_{2n,1}(lambda - 1/2) and
    check it is nondecreasing within `tolerance`
    """
    offset = Fraction(8 * n * n + 1, 8 * n + 2)
    values = []
    with mpmath.workprec(96):
        for lam in lambdas:
            bracket = first_positive_zero(n, Fraction(lam) - HALF, width)
            y = mpmath.mpf(bracket.midpoint.numerator) / bracket.midpoint.denominator
            q = Fraction(lam) + offset
            values.append(float(mpmath.sqrt(mpmath.mpf(q.numerator) / q.denominator) * y))
    nondecreasing = all(b >= a - tolerance for a, b in zip(values, values[1:]))
    return {'n': n, 'lambdas': [str(v) for v in lambdas], 'values': values,
            'nondecreasing': nondecreasing}


@lru_cache(maxsize=256)
def _chebyshev_dense(k):
    previous, current = (Fraction(1),), (Fraction(0), Fraction(1))
    if k == 0:
        return previous
    for _ in range(1, k):
        doubled = (Fraction(0),) + tuple(2 * c for c in current)
        padded = previous + (Fraction(0),) * (len(doubled) - len(previous))
        previous, current = current, tuple(a - b for a, b in zip(doubled, padded))
    return current


def chebyshev_poly(k):
    """
    T_k from T_{k+1} = 2x T_k - T_{k-1}
    """
    if k < 0:
        raise ParameterRangeError(f"degree must be >= 0, got {k}")
    return Polynomial.from_univariate(_chebyshev_dense(k))


@dataclass(frozen=True)
class ChebyshevReport:
    n: int
    scalar: Fraction
    proportional: bool
    jacobi_zero: ZeroBracket
    chebyshev_zero: ZeroBracket
    zeros_agree: bool

    @property
    def passed(self):
        return self.proportional and self.zeros_agree


def chebyshev_cross_check(n, width=DEFAULT_ZERO_WIDTH):
    """
    P_{2n}^{(-1/2,-1/2)} is an exact multiple of T_{2n}; the scalar is the ratio of leading coefficients
    """
    if n < 1:
        raise ParameterRangeError(f"n must be >= 1, got {n}")
    jacobi = jacobi_coefficients(2 * n, -HALF)
    chebyshev = list(_chebyshev_dense(2 * n))
    scalar = jacobi[-1] / chebyshev[-1]
    proportional = all(a == scalar * b for a, b in zip(jacobi, chebyshev))
    jacobi_zero = first_positive_zero(n, -HALF, width)
    chebyshev_zero = roots.isolate_smallest_root(chebyshev, 0, 1, width)
    return ChebyshevReport(
        n=n,
        scalar=scalar,
        proportional=proportional,
        jacobi_zero=jacobi_zero,
        chebyshev_zero=chebyshev_zero,
        zeros_agree=jacobi_zero.overlaps(chebyshev_zero),
    )


def chebyshev_closed_form_gap(n, width=DEFAULT_ZERO_WIDTH, precision=certify.DEFAULT_PRECISION):
    """
    Upper bound on |x_{2n,1}(-1/2) - cos((2n-1) pi / (4n))|
    """
    bracket = first_positive_zero(n, -HALF, width)
    cos_lower, cos_upper = certify.cos_pi_fraction(Fraction(2 * n - 1, 4 * n), precision)
    return max(bracket.upper - cos_lower, cos_upper - bracket.lower)


def sin_inequality_check(n, precision=certify.DEFAULT_PRECISION):
    """
    Certified sin(pi/(4n)) >= pi/(4n+2)
    """
    if n < 1:
        raise ParameterRangeError(f"n must be >= 1, got {n}")
    sin_lower, _ = certify.sin_pi_fraction(Fraction(1, 4 * n), precision)
    _, pi_upper = certify.pi_enclosure(precision)
    return sin_lower >= pi_upper / (4 * n + 2)


@lru_cache(maxsize=256)
def _gegenbauer_dense(n, lam):
    previous = (Fraction(1),)
    if n == 0:
        return previous
    current = (Fraction(0), 2 * lam)
    for k in range(1, n):
        shifted = (Fraction(0),) + tuple(2 * (k + lam) * c for c in current)
        padded = previous + (Fraction(0),) * (len(shifted) - len(previous))
        following = tuple((a - (k + 2 * lam - 1) * b) / (k + 1) for a, b in zip(shifted, padded))
        previous, current = current, following
    return current


def gegenbauer_poly(n, lam):
    """
    C_n^lam from (n+1) C_{n+1} = 2(n+lam) x C_n - (n+2lam-1) C_{n-1}
    """
    lam = Fraction(lam)
    if lam <= 0:
        raise ParameterRangeError(f"Gegenbauer parameter must be positive, got {lam}")
    return Polynomial.from_univariate(_gegenbauer_dense(n, lam))


def gegenbauer_cross_check(n, alpha):
    """
    Scalar c with P_n^{(alpha,alpha)} = c C_n^{alpha+1/2}, or None when not proportional
    """
    alpha = _check_alpha(alpha)
    if alpha <= -HALF:
        raise ParameterRangeError("Gegenbauer comparison needs alpha > -1/2")
    jacobi = jacobi_coefficients(n, alpha)
    gegenbauer = gegenbauer_poly(n, alpha + HALF).univariate_coefficients()
    scalar = jacobi[-1] / gegenbauer[-1]
    if all(a == scalar * b for a, b in zip(jacobi, gegenbauer)):
        return scalar
    return None


@dataclass
class ZeroBoundRow:
    n: int
    alpha: Fraction
    zero_lower: Fraction
    zero_upper: Fraction
    elbert_bound: Fraction
    passed: bool
    route: str = field(default='bound')

    def as_row(self):
        return {
            'n': self.n,
            'alpha': self.alpha,
            'zero_lower': self.zero_lower,
            'zero_upper': self.zero_upper,
            'elbert_bound': self.elbert_bound,
            'pass': self.passed,
            'route': self.route,
        }


ZERO_BOUND_FIELDS = ('n', 'alpha', 'zero_lower', 'zero_upper', 'elbert_bound', 'pass', 'route')


def zero_bound_row(n, alpha, width=DEFAULT_ZERO_WIDTH, precision=certify.DEFAULT_PRECISION):
    """
    One table row. For n < 3 the bound is outside its stated range: the exact
    zero is reported and the formula value is recorded as an empirical comparison.
    """
    alpha = Fraction(alpha)
    bracket = first_positive_zero(n, alpha, width)
    if n >= 3:
        bound = elbert_lower_bound(n, alpha, precision)
        route = 'bound'
    else:
        bound = elbert_formula(n, alpha, precision)[0]
        route = 'exact'
    passed = bracket.certified and bracket.lower >= bound
    if not passed:
        logger.warning("zero bound row failed: n=%s alpha=%s route=%s", n, alpha, route)
    return ZeroBoundRow(n, alpha, bracket.lower, bracket.upper, bound, passed, route)


def zero_bound_table(n_values, alphas=ALPHA_GRID, width=DEFAULT_ZERO_WIDTH,
                     precision=certify.DEFAULT_PRECISION):
    return [zero_bound_row(n, alpha, width, precision) for n in n_values for alpha in alphas]
