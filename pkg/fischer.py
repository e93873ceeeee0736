"""
Fischer decomposition f = q s + r with r harmonic, for nonhyperbolic quadrics

    q = sum a_j^2 x_j^2 + sum b_j x_j + c,   some a_j^2 > 0.

The unknown s is found degree by degree from the top: the degree-t part of
Laplacian(q s) = Laplacian(f) reads

    L_t(s_t) = (Lf)_t - Laplacian(P_1 s_{t+1}) - c Laplacian(s_{t+2}),

where L_t: s_t -> Laplacian(P_2 s_t) is invertible on homogeneous degree t.
Each L_t is inverted once by fraction-free elimination and cached.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath
import numpy as np

from errors import DecompositionError, ParameterRangeError, QuadricError
from linalg import ExactSolver
from polycore import Polynomial, monomials_of_degree, to_mpf
from utils import log_event

logger = logging.getLogger(__name__)

QUADRIC_KINDS = ('ellipsoid', 'paraboloid', 'ellipsoidal_cylinder', 'slab', 'general')


@dataclass(frozen=True)
class NonhyperbolicQuadric:
    squares: tuple
    linear: tuple
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        squares = tuple(Fraction(a) for a in self.squares)
        linear = tuple(Fraction(b) for b in self.linear)
        if len(squares) != len(linear):
            raise QuadricError("square and linear coefficient vectors differ in length")
        if not squares:
            raise QuadricError("a quadric needs at least one variable")
        if any(a < 0 for a in squares):
            raise QuadricError("square coefficients a_j^2 must be nonnegative (hyperbolic otherwise)")
        if not any(squares):
            raise QuadricError("at least one a_j must be nonzero (no square term)")
        object.__setattr__(self, 'squares', squares)
        object.__setattr__(self, 'linear', linear)
        object.__setattr__(self, 'constant', Fraction(self.constant))

    @classmethod
    def from_polynomial(cls, q):
        """
        Read (a_j^2, b_j, c) off a polynomial, naming the violated condition on failure
        """
        if q.degree > 2:
            raise QuadricError(f"degree {q.degree} exceeds 2")
        d = q.dimension
        squares, linear = [Fraction(0)] * d, [Fraction(0)] * d
        constant = Fraction(0)
        for mono, coeff in q.terms.items():
            total = sum(mono)
            if total == 0:
                constant = coeff
            elif total == 1:
                linear[mono.index(1)] = coeff
            elif 2 in mono:
                squares[mono.index(2)] = coeff
            else:
                i, j = [k + 1 for k, e in enumerate(mono) if e]
                raise QuadricError(f"cross term x{i}*x{j} is not allowed")
        return cls(tuple(squares), tuple(linear), constant)

    @property
    def dimension(self):
        return len(self.squares)

    @property
    def beta(self):
        return 1 if any(self.linear) else 0

    @property
    def leading_form(self):
        d = self.dimension
        return Polynomial(d, {tuple(2 if i == j else 0 for i in range(d)): a
                              for j, a in enumerate(self.squares)})

    @property
    def linear_form(self):
        d = self.dimension
        return Polynomial(d, {tuple(1 if i == j else 0 for i in range(d)): b
                              for j, b in enumerate(self.linear)})

    @property
    def polynomial(self):
        return self.leading_form + self.linear_form + self.constant

    @property
    def kind(self):
        positive = [a > 0 for a in self.squares]
        if self.beta:
            if any(b and not p for b, p in zip(self.linear, positive)):
                return 'paraboloid'
            return 'general'
        if all(positive):
            return 'ellipsoid'
        if sum(positive) == 1:
            return 'slab'
        return 'ellipsoidal_cylinder'

    @property
    def admissible_order_bound(self):
        """
        Entire data of order below (2 - beta)/2 has an entire harmonic solution
        """
        return Fraction(2 - self.beta, 2)

    def is_admissible(self, order):
        return order < self.admissible_order_bound

    def __str__(self):
        return str(self.polynomial)


@dataclass(frozen=True)
class FischerResult:
    f: Polynomial
    quadric: NonhyperbolicQuadric
    s: Polynomial
    r: Polynomial
    residual_is_zero: bool
    laplacian_is_zero: bool

    def as_dict(self):
        return {
            's': str(self.s),
            'r': str(self.r),
            'quadric': str(self.quadric),
            'checks': {
                'residual_zero': self.residual_is_zero,
                'laplacian_zero': self.laplacian_is_zero,
            },
        }


@lru_cache(maxsize=64)
def _leading_solver(squares, degree):
    """
    Exact inverse of s -> Laplacian(P_2 s) on homogeneous degree `degree`
    """
    d = len(squares)
    monomials = monomials_of_degree(d, degree)
    position = {mono: i for i, mono in enumerate(monomials)}
    leading = NonhyperbolicQuadric(squares, (0,) * d).leading_form
    matrix = [[Fraction(0)] * len(monomials) for _ in monomials]
    for j, mono in enumerate(monomials):
        image = (leading * Polynomial.monomial(d, mono)).laplacian()
        for target, coeff in image.terms.items():
            matrix[position[target]][j] = coeff
    logger.debug("inverting leading block of size %d for degree %d", len(monomials), degree)
    return monomials, ExactSolver(matrix)


def leading_block_size(dimension, degree):
    """
    Order of the largest leading block a decomposition of degree `degree` inverts
    """
    top = degree - 2
    if top < 0:
        return 0
    return math.comb(top + dimension - 1, dimension - 1)


class FischerOperator:
    """
    Decomposition engine for one quadric; leading blocks are shared through a cache keyed by P_2
    """

    def __init__(self, quadric):
        self.quadric = quadric
        self.linear_form = quadric.linear_form
        self.constant = quadric.constant

    def solve_quotient(self, f):
        """
        The s with Laplacian(q s) = Laplacian(f)
        """
        d = self.quadric.dimension
        top = f.degree - 2
        target = f.laplacian()
        parts = {}
        for t in range(top, -1, -1):
            rhs = target.homogeneous_component(t)
            above = parts.get(t + 1)
            if above is not None and self.linear_form:
                rhs = rhs - (self.linear_form * above).laplacian()
            two_above = parts.get(t + 2)
            if two_above is not None and self.constant:
                rhs = rhs - two_above.laplacian().scale(self.constant)
            if rhs.is_zero():
                parts[t] = Polynomial.zero(d)
                continue
            monomials, solver = _leading_solver(self.quadric.squares, t)
            solution = solver.solve([rhs.coefficient(mono) for mono in monomials])
            parts[t] = Polynomial(d, dict(zip(monomials, solution)))
        s = Polynomial.zero(d)
        for part in parts.values():
            s = s + part
        return s

    def decompose(self, f):
        if f.dimension != self.quadric.dimension:
            raise ParameterRangeError(
                f"polynomial dimension {f.dimension} differs from quadric dimension "
                f"{self.quadric.dimension}"
            )
        s = self.solve_quotient(f)
        q = self.quadric.polynomial
        r = f - q * s
        residual_is_zero = (f - q * s - r).is_zero()
        laplacian_is_zero = r.laplacian().is_zero()
        if not (residual_is_zero and laplacian_is_zero):
            log_event('fischer_failure', {'quadric': str(self.quadric), 'degree': f.degree},
                      logging.ERROR)
            raise DecompositionError(f"decomposition of degree {f.degree} failed its exact check")
        return FischerResult(f, self.quadric, s, r, residual_is_zero, laplacian_is_zero)


def fischer_decompose(f, q):
    return FischerOperator(q).decompose(f)


def dirichlet_solve(f, q):
    """
    Harmonic r that agrees with f on {q = 0}
    """
    return fischer_decompose(f, q).r


@dataclass(frozen=True)
class GaussResult:
    degree: int
    dimension: int
    parts: dict

    def harmonic_part(self, degree):
        return self.parts.get(degree, Polynomial.zero(self.dimension))

    def reconstruct(self):
        total = Polynomial.zero(self.dimension)
        for k, h in self.parts.items():
            total = total + h.substitute_radial(self.degree - k)
        return total


def gauss_decompose(f, degree=None):
    """
    f = sum |x|^{D-k} h_k over k = D, D-2, ..., with every h_k harmonic.
    Each step peels the top harmonic part by Fischer decomposition with q = |x|^2.
    """
    if not f.is_homogeneous():
        raise ParameterRangeError("Gauss decomposition needs a homogeneous polynomial")
    if f.is_zero() and degree is None:
        raise ParameterRangeError("the zero polynomial needs an explicit degree")
    degree = f.degree if degree is None else degree
    d = f.dimension
    sphere = NonhyperbolicQuadric((1,) * d, (0,) * d, 0)
    operator = FischerOperator(sphere)
    parts = {}
    current = f
    k = degree
    while k >= 0:
        if k < 2:
            parts[k] = current
            break
        result = operator.decompose(current)
        parts[k] = result.r.homogeneous_component(k)
        current = result.s
        k -= 2
    gauss = GaussResult(degree, d, parts)
    if gauss.reconstruct() != f or any(not h.laplacian().is_zero() for h in parts.values()):
        raise DecompositionError("Gauss decomposition failed to reconstruct its input")
    return gauss


@dataclass(frozen=True)
class SeriesData:
    """
    Truncation f_0 + ... + f_N of entire data, with a declared order
    """
    parts: tuple
    declared_order: Optional[float] = None

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ParameterRangeError("series data needs at least the degree-0 part")
        dimension = parts[0].dimension
        for k, part in enumerate(parts):
            if part.dimension != dimension:
                raise ParameterRangeError("series parts differ in dimension")
            if not part.is_zero() and (not part.is_homogeneous() or part.degree != k):
                raise ParameterRangeError(f"part {k} is not homogeneous of degree {k}")
        object.__setattr__(self, 'parts', parts)

    @classmethod
    def from_polynomial(cls, f, truncation=None, declared_order=None):
        truncation = f.degree if truncation is None else truncation
        parts = tuple(f.homogeneous_component(k) for k in range(max(truncation, 0) + 1))
        return cls(parts, declared_order)

    @property
    def dimension(self):
        return self.parts[0].dimension

    @property
    def truncation_degree(self):
        return len(self.parts) - 1

    def polynomial(self):
        total = Polynomial.zero(self.dimension)
        for part in self.parts:
            total = total + part
        return total


def _linear_power_series(dimension, coefficients, direction, truncation):
    linear = Polynomial(dimension, {
        tuple(1 if i == j else 0 for i in range(dimension)): b
        for j, b in enumerate(direction)
    })
    parts = []
    power = Polynomial.constant(dimension, 1)
    for k in range(truncation + 1):
        parts.append(power.scale(coefficients(k)))
        power = power * linear
    return SeriesData(tuple(parts), declared_order=1.0)


def exponential_series(dimension, truncation, direction=None):
    """
    Taylor parts of exp(<b, x>) up to the given degree
    """
    direction = direction or (1,) + (0,) * (dimension - 1)
    return _linear_power_series(dimension, lambda k: Fraction(1, math.factorial(k)),
                                direction, truncation)


def cosine_series(dimension, truncation, direction=None):
    """
    Taylor parts of cos(<b, x>) up to the given degree
    """
    direction = direction or (1,) + (0,) * (dimension - 1)

    def coefficient(k):
        if k % 2:
            return Fraction(0)
        return Fraction((-1) ** (k // 2), math.factorial(k))

    return _linear_power_series(dimension, coefficient, direction, truncation)


@dataclass
class SeriesDiagnostics:
    truncation_degree: int
    r_norms: list
    s_norms: list
    order_proxy: list
    declared_order: Optional[float]
    admissible_bound: Fraction
    admissible: Optional[bool]
    warnings: list = field(default_factory=list)

    def as_dict(self):
        return {
            'truncation_degree': self.truncation_degree,
            'r_norms': [str(v) for v in self.r_norms],
            's_norms': [str(v) for v in self.s_norms],
            'order_proxy': self.order_proxy,
            'declared_order': self.declared_order,
            'admissible_bound': str(self.admissible_bound),
            'admissible': self.admissible,
            'warnings': list(self.warnings),
        }


def order_proxy(parts):
    """
    k log k / log(1/M_k) for each degree k >= 2 with 0 < M_k < 1, M_k the l1 norm of part k
    """
    proxies = []
    with mpmath.workprec(64):
        for k, part in enumerate(parts):
            size = part.l1_norm()
            if k < 2 or not 0 < size < 1:
                proxies.append(None)
                continue
            logarithm = -mpmath.log(to_mpf(size))
            proxies.append(float(k * mpmath.log(k) / logarithm))
    return proxies


def dirichlet_solve_series(data, q):
    """
    Exact decomposition of the degree-N truncation plus growth diagnostics
    """
    f = data.polynomial()
    result = fischer_decompose(f, q)
    n = data.truncation_degree
    r_parts = tuple(result.r.homogeneous_component(k) for k in range(n + 1))
    s_norms = [result.s.homogeneous_component(k).l1_norm() for k in range(max(n - 1, 0))]
    warnings = []
    admissible = None
    if data.declared_order is not None:
        admissible = q.is_admissible(Fraction(data.declared_order))
        if not admissible:
            warnings.append(
                f"declared order {data.declared_order} is not below {q.admissible_order_bound} "
                f"for beta={q.beta}; the truncated solve is still exact"
            )
            logger.warning(warnings[-1])
    diagnostics = SeriesDiagnostics(
        truncation_degree=n,
        r_norms=[part.l1_norm() for part in r_parts],
        s_norms=s_norms,
        order_proxy=order_proxy(data.parts),
        declared_order=data.declared_order,
        admissible_bound=q.admissible_order_bound,
        admissible=admissible,
        warnings=warnings,
    )
    return SeriesData(r_parts, data.declared_order), diagnostics


def stabilization_probe(builder, q, truncations=(8, 10, 12)):
    """
    Per degree k, the largest coefficient change of r_N between consecutive truncations.
    `builder(N)` returns SeriesData truncated at N.
    """
    solutions = [(n, dirichlet_solve_series(builder(n), q)[0]) for n in truncations]
    rows = []
    for (n_a, r_a), (n_b, r_b) in zip(solutions, solutions[1:]):
        for k in range(min(n_a, n_b) - 1):
            change = (r_b.parts[k] - r_a.parts[k]).max_abs_coefficient()
            rows.append({'from': n_a, 'to': n_b, 'degree': k, 'max_change': change})
    return rows


@dataclass
class BoundaryResidual:
    max_residual: object
    points: int
    requested: int
    exact: bool

    @property
    def complete(self):
        return self.points >= self.requested


def _linear_coordinate(q):
    for j in range(q.dimension - 1, -1, -1):
        if q.squares[j] == 0 and q.linear[j] != 0:
            return j
    return None


def boundary_residual(f, r, q, samples=100, precision=128, seed=0, spread=1):
    """
    max |f - r| over points of {q = 0}. Free coordinates are random rationals
    in [-spread, spread]; the last solved coordinate comes from the linear
    equation when q has one (exact points) or from the quadratic otherwise.
    """
    rng = np.random.default_rng(seed)
    d = q.dimension
    difference = f - r
    linear = _linear_coordinate(q)
    solve_for = linear if linear is not None else max(j for j in range(d) if q.squares[j] > 0)
    found = 0
    attempts = 0
    worst_exact = Fraction(0)
    with mpmath.workprec(precision):
        worst = mpmath.mpf(0)
        while found < samples and attempts < 20 * samples:
            attempts += 1
            point = [Fraction(int(rng.integers(-16, 17)) * spread, 16) for _ in range(d)]
            rest = q.constant + sum(
                q.squares[i] * point[i] ** 2 + q.linear[i] * point[i]
                for i in range(d) if i != solve_for
            )
            a, b = q.squares[solve_for], q.linear[solve_for]
            if linear is not None:
                point[solve_for] = -rest / b
                worst_exact = max(worst_exact, abs(difference.evaluate_exact(point)))
                found += 1
                continue
            discriminant = b * b - 4 * a * rest
            if discriminant < 0:
                continue
            root = mpmath.sqrt(to_mpf(discriminant))
            sign = 1 if rng.integers(0, 2) else -1
            coords = [to_mpf(v) for v in point]
            coords[solve_for] = (-to_mpf(b) + sign * root) / (2 * to_mpf(a))
            worst = max(worst, abs(difference.evaluate(coords, precision)))
            found += 1
        if linear is not None:
            worst = to_mpf(worst_exact)
    if found < samples:
        log_event('boundary_sampling_short', {'found': found, 'requested': samples,
                                              'quadric': str(q)}, logging.WARNING)
    return BoundaryResidual(worst, found, samples, linear is not None)
