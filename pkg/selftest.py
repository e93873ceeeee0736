"""
Reduced run of every invariant the library promises. Used by the `selftest` verb.
"""
import logging
from fractions import Fraction

import numpy as np

import fischer
import harmonics
import jacobi
from polycore import Polynomial, format_polynomial, parse_polynomial, random_polynomial
from sphereint import inner_product, norm_sq

logger = logging.getLogger(__name__)

SELFTEST_FIELDS = ('check', 'pass', 'detail')


def _ring_axioms(rng):
    for _ in range(5):
        p, q, r = (random_polynomial(3, 3, rng, density=0.5) for _ in range(3))
        if (p * q) * r != p * (q * r) or p * (q + r) != p * q + p * r:
            return False, 'associativity or distributivity broken'
        if parse_polynomial(format_polynomial(p), 3) != p:
            return False, f'round trip failed for {p}'
        if sum(p.homogeneous_parts().values(), Polynomial.zero(3)) != p:
            return False, 'homogeneous parts do not sum back'
    return True, '5 random triples'


def _sphere_positivity(rng):
    for _ in range(5):
        f = random_polynomial(3, 3, rng, density=0.5)
        if norm_sq(f).coefficient <= 0:
            return False, f'nonpositive norm for {f}'
    odd = Polynomial.variable(3, 1) * Polynomial.variable(3, 2) * Polynomial.variable(3, 3)
    if not inner_product(odd, Polynomial.constant(3, 1)).is_zero():
        return False, 'odd integrand did not vanish'
    return True, 'norms positive, parity zero'


def _recurrences():
    for alpha in jacobi.ALPHA_GRID:
        for n in range(9):
            if not jacobi.squared_recurrence_residual(n, alpha).is_zero():
                return False, f'x^2 recurrence fails at n={n}, alpha={alpha}'
            if not jacobi.even_substitution_residual(n // 2, alpha).is_zero():
                return False, f'even substitution fails at n={n // 2}, alpha={alpha}'
    return True, 'n <= 8 on the alpha grid'


def _zero_bounds():
    rows = jacobi.zero_bound_table(range(3, 7), jacobi.ALPHA_GRID[:5])
    failed = [(row.n, str(row.alpha)) for row in rows if not row.passed]
    return not failed, f'{len(rows)} rows, failures {failed}'


def _chebyshev():
    reports = [jacobi.chebyshev_cross_check(n) for n in range(1, 5)]
    sines = all(jacobi.sin_inequality_check(n) for n in (1, 2, 10, 100))
    gap = jacobi.chebyshev_closed_form_gap(3)
    passed = all(report.passed for report in reports) and sines and gap <= Fraction(1, 2 ** 40)
    return passed, f'closed-form gap {float(gap):.3e}'


def _basis(max_degree):
    problems = []
    for d in (2, 3):
        basis = harmonics.build_basis(d, max_degree)
        if harmonics.check_harmonic(basis):
            problems.append(f'non-harmonic entries in d={d}')
        if harmonics.check_orthogonality(basis):
            problems.append(f'non-orthogonal pairs in d={d}')
        if harmonics.check_counts(basis):
            problems.append(f'count mismatch in d={d}')
        for m in range(max_degree // 2 + 1):
            for s in range(0, 2 * m + 1):
                if basis.labels(s):
                    harmonics.assemble_block(basis, m, s, 1)
    return not problems, '; '.join(problems) or f'd in (2, 3), degree <= {max_degree}'


def _bound_grid(tol, jobs):
    failures = 0
    for d in (2, 3):
        report = harmonics.verify_bound_grid(d, 4, tol, jobs)
        failures += len(report.failures)
    return failures == 0, f'{failures} failing rows'


def _routes(tol):
    rows = [row for d in (2, 3) for row in harmonics.route_agreement(d, 3, tol)]
    disagree = [(row['d'], row['m'], row['s']) for row in rows
                if row['s'] % 2 == 0 and not row['agree']]
    return not disagree, f'even-s disagreements {disagree}'


def _fischer(rng):
    quadrics = [
        fischer.NonhyperbolicQuadric((1, 1), (0, 0), -1),
        fischer.NonhyperbolicQuadric((0, 1), (-1, 0), 0),
        fischer.NonhyperbolicQuadric((0, 1, 1), (0, 0, 0), -1),
        fischer.NonhyperbolicQuadric((0, 1), (0, 0), -1),
    ]
    for q in quadrics:
        for _ in range(3):
            f = random_polynomial(q.dimension, 5, rng, density=0.6)
            result = fischer.fischer_decompose(f, q)
            again = fischer.fischer_decompose(result.r, q)
            if not again.s.is_zero() or again.r != result.r:
                return False, f'decomposition not unique for {q}'
    gauss = fischer.gauss_decompose(random_polynomial(3, 4, rng).homogeneous_component(4))
    return gauss.degree == 4, 'random data on four quadric families'


def run_selftest(config):
    rng = np.random.default_rng(config.seed)
    checks = [
        ('ring_axioms', lambda: _ring_axioms(rng)),
        ('sphere_positivity', lambda: _sphere_positivity(rng)),
        ('jacobi_recurrences', _recurrences),
        ('zero_bounds', _zero_bounds),
        ('chebyshev', _chebyshev),
        ('basis', lambda: _basis(4)),
        ('bound_grid', lambda: _bound_grid(config.tolerance, config.jobs)),
        ('route_agreement', lambda: _routes(config.tolerance)),
        ('fischer', lambda: _fischer(rng)),
    ]
    rows = []
    for name, check in checks:
        passed, detail = check()
        logger.info("selftest %s: %s", name, 'pass' if passed else 'FAIL')
        rows.append({'check': name, 'pass': passed, 'detail': detail})
    return rows
