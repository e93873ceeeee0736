"""
Orthogonal spherical-harmonic bases, the tridiagonal blocks of the weight
x_d^2, and certification of the lower bound

    <x_j^2 f, f> >= pi^2 / (4 (M + 2d + 1)^2) <f, f>    for deg f = M.

Basis entries follow the induction

    Y^d_{k,(s,l)} = Y^{d-1}_{s,l}(x_1..x_{d-1}) * |x|^{k-s} P_{k-s}^{(a_s,a_s)}(x_d / |x|),
    a_s = s + (d-3)/2,

floored at d = 2 by the real and imaginary parts of (x_1 + i x_2)^k.

Multiplying by x_d^2 moves Y_{k,(s,l)} only to degrees k-2, k, k+2 of the
same (s, l) family, so for a polynomial degree M and a label s the quotient
lives on the tridiagonal block over harmonic degrees j = M, M-2, ... >= s.
Its smallest eigenvalue is the infimum of the quotient on that family.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

import certify
import jacobi
import linalg
import roots
from errors import NormRatioError, OddLabelError, ParameterRangeError
from polycore import Polynomial, monomials_of_degree, radial_power, random_homogeneous
from sphereint import inner_product, norm_sq, rayleigh_quotient
from utils import log_event

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = Fraction(1, 2 ** 40)

BOUND_GRID_FIELDS = ('d', 'm', 's', 'l', 'size', 'lambda_lower', 'lambda_upper',
                     'bound_thm3', 'bound_even', 'bound_proof', 'pass')


def harmonic_dimension(k, d):
    """
    dim H_k(R^d) = C(k+d-1, d-1) - C(k+d-3, d-1)
    """
    if k < 0:
        return 0

    def choose(n, r):
        return math.comb(n, r) if n >= r >= 0 else 0

    return choose(k + d - 1, d - 1) - choose(k + d - 3, d - 1)


def harmonic_kernel_dimension(k, d):
    """
    dim ker(Laplacian) on degree-k homogeneous polynomials, from the exact rank
    """
    columns = monomials_of_degree(d, k)
    if k < 2:
        return len(columns)
    rows = {mono: i for i, mono in enumerate(monomials_of_degree(d, k - 2))}
    matrix = [[Fraction(0)] * len(columns) for _ in rows]
    for j, mono in enumerate(columns):
        for target, coeff in Polynomial.monomial(d, mono).laplacian().terms.items():
            matrix[rows[target]][j] = coeff
    return len(columns) - linalg.rank(matrix)


def label_alpha(s, d):
    return s + Fraction(d - 3, 2)


@dataclass(frozen=True, order=True)
class BasisIndex:
    k: int
    s: int
    l: int
    d: int = field(default=2, compare=False)

    @property
    def sigma(self):
        return self.s // 2

    @property
    def delta(self):
        return self.s % 2

    def __str__(self):
        return f"Y^{self.d}_({self.k},({self.s},{self.l}))"


@dataclass(frozen=True)
class BasisEntry:
    index: BasisIndex
    polynomial: Polynomial
    norm_sq: object


def radial_jacobi(n, alpha, d):
    """
    |x|^n P_n^{(alpha,alpha)}(x_d / |x|) as a polynomial in d variables
    """
    result = Polynomial.zero(d)
    for power, coeff in enumerate(jacobi.jacobi_coefficients(n, alpha)):
        if not coeff:
            continue
        mono = [0] * d
        mono[d - 1] = power
        result = result + Polynomial.monomial(d, mono, coeff) * radial_power(d, (n - power) // 2)
    return result


def _planar_entries(k):
    if k == 0:
        return ((BasisIndex(0, 0, 1, 2), Polynomial.constant(2, 1)),)
    real, imaginary = {}, {}
    for j in range(k + 1):
        coeff = math.comb(k, j)
        if j % 2 == 0:
            real[(k - j, j)] = coeff * (-1) ** (j // 2)
        else:
            imaginary[(k - j, j)] = coeff * (-1) ** ((j - 1) // 2)
    entries = []
    for terms in (real, imaginary):
        poly = Polynomial(2, terms)
        s = next(iter(terms))[0] % 2
        # scale so the x_1^s x_2^{k-s} coefficient is P_{k-s}(1), as in the general induction
        target = jacobi.jacobi_value_at_one(k - s, label_alpha(s, 2))
        poly = poly.scale(target / poly.coefficient((s, k - s)))
        entries.append((BasisIndex(k, s, 1, 2), poly))
    entries.sort(key=lambda item: item[0])
    return tuple(entries)


@lru_cache(maxsize=512)
def degree_entries(d, k):
    """
    ((BasisIndex, polynomial), ...) for all basis entries of degree k in dimension d
    """
    if d < 2:
        raise ParameterRangeError(f"harmonic bases need d >= 2, got {d}")
    if d == 2:
        return _planar_entries(k)
    result = []
    for s in range(k + 1):
        radial = radial_jacobi(k - s, label_alpha(s, d), d)
        for l, (_, lower) in enumerate(degree_entries(d - 1, s), start=1):
            result.append((BasisIndex(k, s, l, d), lower.embed(d) * radial))
    return tuple(result)


@lru_cache(maxsize=512)
def _degree_norms(d, k):
    return tuple(norm_sq(poly) for _, poly in degree_entries(d, k))


class HarmonicBasis:
    """
    Orthogonal basis of homogeneous harmonics of degree <= max_degree in d variables
    """

    def __init__(self, d, max_degree, with_norms=True):
        self.d = d
        self.max_degree = max_degree
        self.entries = {}
        for k in range(max_degree + 1):
            norms = _degree_norms(d, k) if with_norms else (None,) * len(degree_entries(d, k))
            for (index, poly), norm in zip(degree_entries(d, k), norms):
                self.entries[index] = BasisEntry(index, poly, norm)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def entry(self, k, s, l):
        index = BasisIndex(k, s, l, self.d)
        if index not in self.entries:
            raise ParameterRangeError(f"{index} is not in this basis")
        return self.entries[index]

    def at_degree(self, k):
        return [entry for entry in self.entries.values() if entry.index.k == k]

    def family(self, s, l):
        return [entry for entry in self.entries.values()
                if entry.index.s == s and entry.index.l == l]

    def labels(self, s):
        """
        Number of l values for label s (the d-1 dimensional harmonic count)
        """
        return harmonic_dimension(s, self.d - 1)


def build_basis(d, max_degree, with_norms=True):
    if d < 2:
        raise ParameterRangeError(f"harmonic bases need d >= 2, got {d}")
    if max_degree < 0:
        raise ParameterRangeError(f"max degree must be >= 0, got {max_degree}")
    return HarmonicBasis(d, max_degree, with_norms)


def _parity_signature(poly):
    signatures = {tuple(e & 1 for e in mono) for mono in poly.terms}
    return signatures.pop() if len(signatures) == 1 else None


def check_harmonic(basis):
    """
    Indices whose Laplacian is not exactly zero
    """
    return [entry.index for entry in basis if not entry.polynomial.laplacian().is_zero()]


def check_orthogonality(basis):
    """
    Pairs (a, b) with <Y_a, Y_b> != 0. Entries with different parity patterns
    integrate to exactly zero and are skipped.
    """
    entries = list(basis)
    signatures = [_parity_signature(entry.polynomial) for entry in entries]
    failures = []
    for i, left in enumerate(entries):
        for j in range(i + 1, len(entries)):
            right = entries[j]
            if signatures[i] is not None and signatures[j] is not None \
                    and signatures[i] != signatures[j]:
                continue
            if not inner_product(left.polynomial, right.polynomial).is_zero():
                failures.append((left.index, right.index))
    return failures


def check_counts(basis):
    """
    {k: (entries, closed form)} for every degree where they differ
    """
    mismatches = {}
    for k in range(basis.max_degree + 1):
        found = len(basis.at_degree(k))
        expected = harmonic_dimension(k, basis.d)
        if found != expected:
            mismatches[k] = (found, expected)
    return mismatches


def three_term_residual(basis, index):
    """
    x_d^2 Y_k - (a~ Y_{k+2} + b~ |x|^2 Y_k + g~ |x|^4 Y_{k-2}), homogenized; exactly zero
    """
    d = basis.d
    n = index.k - index.s
    coeffs = jacobi.squared_recurrence(n, label_alpha(index.s, d))
    x_d = Polynomial.variable(d, d)
    current = basis.entry(index.k, index.s, index.l).polynomial
    residual = x_d * x_d * current \
        - coeffs.a_tilde * basis.entry(index.k + 2, index.s, index.l).polynomial \
        - coeffs.b_tilde * current.substitute_radial(2)
    if n >= 2:
        below = basis.entry(index.k - 2, index.s, index.l).polynomial
        residual = residual - coeffs.g_tilde * below.substitute_radial(4)
    return residual


def three_term_coefficients(basis, index):
    """
    Nonzero coefficients of x_d^2 Y_index in the basis, via exact inner products
    """
    x_d = Polynomial.variable(basis.d, basis.d)
    product = x_d * x_d * basis.entry(index.k, index.s, index.l).polynomial
    coefficients = {}
    for entry in basis:
        value = inner_product(product, entry.polynomial)
        if not value.is_zero():
            coefficients[entry.index] = value.ratio(entry.norm_sq)
    return coefficients


@dataclass(frozen=True)
class BlockMatrix:
    """
    Tridiagonal block of the weight x_d^2 on one (s, l) family.

    Rows are harmonic degrees j = j_min, j_min + 2, ..., degree with Jacobi
    index n = j - s. `upper[i]` is a~_{n_i}, `lower[i]` is g~_{n_{i+1}};
    the stored matrix is similar to the symmetric one with squared
    off-diagonals a~_{n_i} g~_{n_{i+1}}.
    """
    d: int
    degree: int
    s: int
    l: int
    diag: tuple
    upper: tuple
    lower: tuple
    norm_ratios: Optional[tuple] = None

    @property
    def size(self):
        return len(self.diag)

    @property
    def m(self):
        return self.degree // 2

    @property
    def sigma(self):
        return self.s // 2

    @property
    def delta(self):
        return self.s % 2

    @property
    def alpha(self):
        return label_alpha(self.s, self.d)

    @property
    def row_degrees(self):
        start = self.degree - 2 * (self.size - 1)
        return tuple(range(start, self.degree + 1, 2))

    @property
    def offdiag_sq(self):
        return tuple(u * w for u, w in zip(self.upper, self.lower))

    @property
    def symmetric_form(self):
        return self.diag, self.offdiag_sq

    def entry(self, i, j):
        if i == j:
            return self.diag[i]
        if j == i + 1:
            return self.upper[i]
        if i == j + 1:
            return self.lower[j]
        return Fraction(0)

    def matrix(self):
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def symmetric_float_matrix(self):
        """
        Floating-point symmetric form, for spot checks only
        """
        diag, offdiag_sq = self.symmetric_form
        out = np.diag([float(v) for v in diag])
        for i, square in enumerate(offdiag_sq):
            out[i, i + 1] = out[i + 1, i] = math.sqrt(float(square))
        return out

    def gershgorin_bounds(self):
        """
        Rational (lower, upper) containing the whole spectrum
        """
        radii = [certify.sqrt_enclosure(square)[1] for square in self.offdiag_sq]
        lower = upper = None
        for i, centre in enumerate(self.diag):
            radius = (radii[i - 1] if i > 0 else 0) + (radii[i] if i < len(radii) else 0)
            lower = centre - radius if lower is None else min(lower, centre - radius)
            upper = centre + radius if upper is None else max(upper, centre + radius)
        return lower, upper


def _block_rows(degree, s):
    if not 0 <= s <= degree:
        raise ParameterRangeError(f"label s={s} must lie in [0, {degree}]")
    start = s if (degree - s) % 2 == 0 else s + 1
    return list(range(start, degree + 1, 2))


def recurrence_block(d, degree, s, l=1, norm_ratios=None):
    """
    Block from the recurrence constants alone; its entries do not depend on l
    """
    if d < 2:
        raise ParameterRangeError(f"d must be >= 2, got {d}")
    if l < 1 or l > harmonic_dimension(s, d - 1):
        raise ParameterRangeError(f"label l={l} out of range for s={s}, d={d}")
    alpha = label_alpha(s, d)
    rows = _block_rows(degree, s)
    coeffs = [jacobi.squared_recurrence(j - s, alpha) for j in rows]
    return BlockMatrix(
        d=d,
        degree=degree,
        s=s,
        l=l,
        diag=tuple(c.b_tilde for c in coeffs),
        upper=tuple(c.a_tilde for c in coeffs[:-1]),
        lower=tuple(c.g_tilde for c in coeffs[1:]),
        norm_ratios=norm_ratios,
    )


def assemble_degree_block(basis, degree, s, l):
    """
    Block for polynomial degree `degree`, checked against the basis norms.

    The ratio N_{j+2}/N_j of squared norms must be rational and equal
    g~_{n+2}/a~_n; anything else means the basis is wrong.
    """
    if degree > basis.max_degree:
        raise ParameterRangeError(f"basis only reaches degree {basis.max_degree}, need {degree}")
    rows = _block_rows(degree, s)
    ratios = []
    for j in rows[:-1]:
        here = basis.entry(j, s, l).norm_sq
        there = basis.entry(j + 2, s, l).norm_sq
        if here is None or there is None:
            raise NormRatioError("basis was built without norms")
        ratios.append(there.ratio(here))
    block = recurrence_block(basis.d, degree, s, l, tuple(ratios))
    for i, ratio in enumerate(ratios):
        if ratio * block.upper[i] != block.lower[i]:
            log_event('norm_ratio_mismatch', {'d': basis.d, 'degree': degree, 's': s, 'l': l,
                                              'row': i, 'ratio': str(ratio)}, logging.ERROR)
            raise NormRatioError(
                f"norm ratio {ratio} at row {i} of block (degree={degree}, s={s}, l={l}) "
                f"does not match the recurrence"
            )
    return block


def assemble_block(basis, m, s, l):
    """
    A_m(s, l): the block of polynomial degree 2m, rows k = sigma + delta .. m
    """
    if not 0 <= s <= 2 * m:
        raise ParameterRangeError(f"s={s} must lie in [0, {2 * m}]")
    return assemble_degree_block(basis, 2 * m, s, l)


def characteristic_polynomial(block):
    """
    Monic det(lambda I - J) from p_{k+1} = (lambda - b_k) p_k - e_{k-1}^2 p_{k-1}
    """
    previous, current = [Fraction(1)], [-block.diag[0], Fraction(1)]
    squares = block.offdiag_sq
    for k in range(1, block.size):
        shifted = [Fraction(0)] + current
        following = [a - block.diag[k] * b for a, b in zip(shifted, current + [Fraction(0)])]
        for i, c in enumerate(previous):
            following[i] -= squares[k - 1] * c
        previous, current = current, following
    return current


def determinant_identity(block, value):
    """
    det(J - value I) and (-1)^n p_n(value), which must coincide
    """
    value = Fraction(value)
    shifted = [[entry - (value if i == j else 0) for j, entry in enumerate(row)]
               for i, row in enumerate(block.matrix())]
    det = linalg.determinant(shifted)
    char = roots.evaluate(characteristic_polynomial(block), value)
    return det, (-1) ** block.size * char


@dataclass(frozen=True)
class EigenResult:
    lower: Fraction
    upper: Fraction
    route: str
    d: int
    degree: int
    s: int
    l: int
    certified: bool = True

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def positive(self):
        return self.lower > 0

    def overlaps(self, other):
        return self.lower <= other.upper and other.lower <= self.upper


def smallest_eigenvalue_charpoly(block, tol=DEFAULT_TOLERANCE):
    """
    Sturm bisection on the exact characteristic polynomial, inside the Gershgorin and Cauchy bounds
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ParameterRangeError("tolerance must be positive")
    lower, upper = block.gershgorin_bounds()
    charpoly = characteristic_polynomial(block)
    cauchy = roots.root_bound(charpoly)
    bracket = roots.isolate_smallest_root(charpoly, max(lower - 1, -cauchy), min(upper, cauchy),
                                          tol)
    return EigenResult(bracket.lower, bracket.upper, 'char_poly', block.d, block.degree,
                       block.s, block.l, bracket.certified)


def jacobi_zero_eigenvalue(degree, s, d, tol=DEFAULT_TOLERANCE, route='jacobi_zero'):
    """
    Square of the first positive zero of P_{degree - s + 2}^{(a_s, a_s)}
    """
    tol = Fraction(tol)
    zero = jacobi.first_positive_zero_of_degree(degree - s + 2, label_alpha(s, d), tol / 2)
    squared = zero.squared()
    return EigenResult(squared.lower, squared.upper, route, d, degree, s, 1, zero.certified)


def smallest_eigenvalue_jacobizero(m, s, d, tol=DEFAULT_TOLERANCE):
    """
    lambda* of A_m(s, l) for even s: the squared first positive zero of
    P_{2n}^{(a_s, a_s)} with n = m - sigma + 1
    """
    if not 0 <= s <= 2 * m:
        raise ParameterRangeError(f"s={s} must lie in [0, {2 * m}]")
    if s % 2:
        below = jacobi_zero_eigenvalue(2 * m, s - 1, d, tol, route='interlacing')
        raise OddLabelError(
            f"the Jacobi-zero route covers even s only (got s={s}); interlacing with "
            f"s={s - 1} gives lambda* >= {below.lower}",
            interlacing_bound=below,
        )
    return jacobi_zero_eigenvalue(2 * m, s, d, tol)


def odd_block_eigenvalue(m, s, d, tol=DEFAULT_TOLERANCE):
    """
    Same squared-zero construction for odd s; recorded empirically
    """
    return jacobi_zero_eigenvalue(2 * m, s, d, tol, route='jacobi_zero_odd')


def parameter_estimate_check(m, d):
    """
    max over even s of (a_s + 1/2 + n)(n + 2) <= (m + d)^2, n = m - sigma + 1
    """
    worst = Fraction(0)
    for s in range(0, 2 * m + 1, 2):
        n = m - s // 2 + 1
        worst = max(worst, (label_alpha(s, d) + Fraction(1, 2) + n) * (n + 2))
    return worst <= (m + d) ** 2, worst


@dataclass
class BoundRow:
    d: int
    m: int
    s: int
    l: int
    size: int
    lambda_lower: Fraction
    lambda_upper: Fraction
    bound_thm3: Fraction
    bound_even: Optional[Fraction]
    bound_proof: Fraction
    passed: bool

    def as_row(self):
        return {
            'd': self.d, 'm': self.m, 's': self.s, 'l': self.l, 'size': self.size,
            'lambda_lower': self.lambda_lower, 'lambda_upper': self.lambda_upper,
            'bound_thm3': self.bound_thm3, 'bound_even': self.bound_even,
            'bound_proof': self.bound_proof, 'pass': self.passed,
        }


@dataclass
class BoundGridReport:
    d: int
    max_degree: int
    rows: list
    summary: list

    @property
    def passed(self):
        return all(row.passed for row in self.rows)

    @property
    def failures(self):
        return [row for row in self.rows if not row.passed]


def _grid_block(args):
    d, degree, s, tol = args
    block = recurrence_block(d, degree, s)
    return degree, s, block.size, smallest_eigenvalue_charpoly(block, tol)


def _grid_bounds(degree, d, precision):
    thm3 = certify.theorem_bound(degree, d, precision)[1]
    if degree % 2 == 0:
        even = certify.even_index_bound(degree, d, precision)[1]
        proof = certify.proof_bound(degree // 2, d, precision)[1]
    else:
        even = None
        # odd degrees inherit the even constant of degree + 1
        proof = certify.proof_bound((degree + 1) // 2, d, precision)[1]
    return thm3, even, proof


def verify_bound_grid(d, max_degree, tol=DEFAULT_TOLERANCE, jobs=1,
                      precision=certify.DEFAULT_PRECISION):
    """
    Certify every block (M, s, l) for polynomial degrees M <= max_degree.

    The column `m` is the polynomial degree M. Rows compare the lower end of
    the eigenvalue bracket with the upper end of each bound enclosure.
    """
    if d < 2:
        raise ParameterRangeError(f"d must be >= 2, got {d}")
    tasks = [(d, degree, s, Fraction(tol))
             for degree in range(max_degree + 1)
             for s in range(degree + 1)
             if harmonic_dimension(s, d - 1) > 0]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_grid_block, tasks))
    else:
        results = [_grid_block(task) for task in tasks]
    results.sort(key=lambda item: (item[0], item[1]))

    rows = []
    bounds = {}
    for degree, s, size, eigen in results:
        if degree not in bounds:
            bounds[degree] = _grid_bounds(degree, d, precision)
        thm3, even, proof = bounds[degree]
        passed = eigen.certified \
            and certify.certainly_at_least(eigen.lower, thm3) \
            and certify.certainly_at_least(eigen.lower, proof) \
            and (even is None or certify.certainly_at_least(eigen.lower, even))
        for l in range(1, harmonic_dimension(s, d - 1) + 1):
            rows.append(BoundRow(d, degree, s, l, size, eigen.lower, eigen.upper,
                                 thm3, even, proof, passed))

    summary = []
    for degree in sorted(bounds):
        degree_rows = [row for row in rows if row.m == degree]
        tightness = min(float(row.lambda_lower / row.bound_thm3) for row in degree_rows)
        entry = {'d': d, 'm': degree, 'blocks': len(degree_rows),
                 'failures': sum(1 for row in degree_rows if not row.passed),
                 'min_ratio_to_thm3': tightness}
        if degree % 2 == 0:
            entry['parameter_estimate'] = parameter_estimate_check(degree // 2, d)[0]
        summary.append(entry)

    report = BoundGridReport(d, max_degree, rows, summary)
    log_event('bound_grid', {'d': d, 'max_degree': max_degree, 'rows': len(rows),
                             'failures': len(report.failures)})
    return report


def route_agreement(d, max_m, tol=DEFAULT_TOLERANCE):
    """
    Compare the two eigenvalue routes on every block A_m(s) with m <= max_m.
    Even s must agree; odd s rows record what the squared-zero construction gives.
    """
    rows = []
    for m in range(max_m + 1):
        for s in range(2 * m + 1):
            if harmonic_dimension(s, d - 1) == 0:
                continue
            block = recurrence_block(d, 2 * m, s)
            charpoly = smallest_eigenvalue_charpoly(block, tol)
            if s % 2 == 0:
                zero = smallest_eigenvalue_jacobizero(m, s, d, tol)
            else:
                zero = odd_block_eigenvalue(m, s, d, tol)
            rows.append({
                'd': d, 'm': m, 's': s, 'size': block.size,
                'charpoly_lower': charpoly.lower, 'charpoly_upper': charpoly.upper,
                'jacobi_lower': zero.lower, 'jacobi_upper': zero.upper,
                'route': zero.route, 'agree': charpoly.overlaps(zero),
            })
    return rows


def interlacing_check(d, m, tol=DEFAULT_TOLERANCE):
    """
    lambda*(A_m(2 sigma + 1)) >= lambda*(A_m(2 sigma)) for every sigma with both blocks
    """
    rows = []
    for s in range(0, 2 * m, 2):
        if harmonic_dimension(s + 1, d - 1) == 0:
            continue
        even = smallest_eigenvalue_charpoly(recurrence_block(d, 2 * m, s), tol)
        odd = smallest_eigenvalue_charpoly(recurrence_block(d, 2 * m, s + 1), tol)
        rows.append({'d': d, 'm': m, 'sigma': s // 2, 'even_upper': even.upper,
                     'odd_lower': odd.lower,
                     'pass': certify.certainly_at_least(odd.lower, even.upper)})
    return rows


def block_l_independence(basis, m, s):
    """
    True when the first two l-blocks of label s coincide entrywise
    """
    if basis.labels(s) < 2:
        raise ParameterRangeError(f"label s={s} has a single l in dimension {basis.d}")
    first = assemble_block(basis, m, s, 1)
    second = assemble_block(basis, m, s, 2)
    return (first.diag, first.upper, first.lower, first.norm_ratios) == \
        (second.diag, second.upper, second.lower, second.norm_ratios)


def rayleigh_bound_check(d, degree, trials, seed=0, precision=certify.DEFAULT_PRECISION):
    """
    Random homogeneous f of the given degree against pi^2 / (4 (degree + 2d + 1)^2).
    Trial t uses the weight x_j^2 with j cycling over all axes, reduced to
    x_d^2 by swapping x_j and x_d in f.
    """
    rng = np.random.default_rng(seed)
    bound = certify.theorem_bound(degree, d, precision)[1]
    x_d = Polynomial.variable(d, d)
    rows = []
    for trial in range(trials):
        f = random_homogeneous(d, degree, rng)
        axis = trial % d + 1
        x_j = Polynomial.variable(d, axis)
        direct = rayleigh_quotient(x_j * x_j, f)
        reduced = rayleigh_quotient(x_d * x_d, f.swap_variables(axis, d))
        rows.append({'trial': trial, 'axis': axis, 'quotient': direct, 'bound': bound,
                     'relabelled': direct == reduced, 'pass': direct >= bound})
    return rows


def even_odd_reduction_check(d, m, trials, seed=0, precision=certify.DEFAULT_PRECISION):
    """
    Random homogeneous f of degree 2m+1 against the even constant C_{2m+2}
    """
    rng = np.random.default_rng(seed)
    bound = certify.even_index_bound(2 * m + 2, d, precision)[1]
    x_1 = Polynomial.variable(d, 1)
    x_d = Polynomial.variable(d, d)
    rows = []
    for trial in range(trials):
        f = random_homogeneous(d, 2 * m + 1, rng)
        quotient = rayleigh_quotient(x_d * x_d, f)
        swapped = rayleigh_quotient(x_1 * x_1, f.swap_variables(1, d))
        rows.append({'trial': trial, 'degree': 2 * m + 1, 'quotient': quotient,
                     'bound': bound, 'symmetric': quotient == swapped,
                     'pass': quotient >= bound})
    return rows
