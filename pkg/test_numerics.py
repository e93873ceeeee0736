from fractions import Fraction

import mpmath
import pytest

import certify
import linalg
import roots
from errors import ParameterRangeError, SingularSystemError


def test_sturm_counts():
    # (x - 1/2)(x - 1)(x + 2)
    coeffs = [1, Fraction(-5, 2), Fraction(1, 2), 1]
    sequence = roots.sturm_sequence(coeffs)
    assert roots.count_roots(sequence, -3, 2) == 3
    assert roots.count_roots(sequence, 0, 1) == 2
    assert roots.count_roots(sequence, Fraction(1, 2), 1) == 1


def test_isolate_exact_root():
    bracket = roots.isolate_smallest_root([Fraction(-1, 4), 0, 1], 0, 1, Fraction(1, 2 ** 20))
    assert bracket.certified
    assert bracket.contains(Fraction(1, 2))
    assert bracket.exact == Fraction(1, 2)


def test_isolate_irrational_root():
    bracket = roots.isolate_smallest_root([-2, 0, 1], 0, 2, Fraction(1, 2 ** 40))
    assert bracket.width <= Fraction(1, 2 ** 40)
    assert bracket.lower ** 2 < 2 < bracket.upper ** 2
    assert bracket.exact is None


def test_isolate_picks_smallest():
    # roots 1/3 and 2/3
    bracket = roots.isolate_smallest_root([2, -9, 9], 0, 1, Fraction(1, 2 ** 30))
    assert bracket.contains(Fraction(1, 3))
    assert not bracket.contains(Fraction(2, 3))


def test_isolate_errors():
    with pytest.raises(ParameterRangeError):
        roots.isolate_smallest_root([-2, 0, 1], 0, 1, Fraction(1, 2 ** 10))
    with pytest.raises(ParameterRangeError):
        roots.isolate_smallest_root([-2, 0, 1], 0, 2, 0)
    with pytest.raises(ParameterRangeError):
        roots.sturm_sequence([3])


def test_bracket_helpers():
    bracket = roots.ZeroBracket(Fraction(1, 2), Fraction(3, 4), True)
    assert bracket.midpoint == Fraction(5, 8)
    assert bracket.squared() == roots.ZeroBracket(Fraction(1, 4), Fraction(9, 16), True)
    assert bracket.overlaps(roots.ZeroBracket(Fraction(3, 4), 1, True))
    with pytest.raises(ParameterRangeError):
        roots.ZeroBracket(1, 1, True)


def test_root_bound():
    assert roots.root_bound([2, -9, 9]) == 2


def test_exact_solver():
    matrix = [[2, 1, 0], [1, 3, 1], [0, 1, Fraction(1, 2)]]
    solver = linalg.ExactSolver(matrix)
    solution = solver.solve([1, 2, 3])
    for row, rhs in zip(matrix, [1, 2, 3]):
        assert sum(Fraction(a) * x for a, x in zip(row, solution)) == rhs


def test_inverse_needs_pivoting():
    adjoint, det = linalg.fraction_free_inverse([[0, 1], [1, 0]])
    inverse = [[Fraction(v, det) for v in row] for row in adjoint]
    assert inverse == [[0, 1], [1, 0]]


def test_singular_matrix():
    with pytest.raises(SingularSystemError):
        linalg.ExactSolver([[1, 2], [2, 4]])


def test_rank_and_determinant():
    assert linalg.rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == 2
    assert linalg.determinant([[2, 1], [1, 3]]) == 5
    assert linalg.determinant([[0, 1], [1, 0]]) == -1
    assert linalg.determinant([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)
    assert linalg.determinant([[1, 2], [2, 4]]) == 0


def test_integer_scaled():
    scaled, scale = linalg.integer_scaled([[Fraction(1, 2), Fraction(1, 3)], [1, 0]])
    assert scale == 6
    assert scaled == [[3, 2], [6, 0]]


def test_pi_enclosure():
    lower, upper = certify.pi_enclosure(128)
    assert lower < upper
    assert upper - lower < Fraction(1, 2 ** 120)
    assert lower < Fraction(355, 113)
    with mpmath.workprec(200):
        pi = mpmath.pi
        assert mpmath.mpf(lower.numerator) / lower.denominator <= pi
        assert pi <= mpmath.mpf(upper.numerator) / upper.denominator


def test_sqrt_enclosure_contains_root():
    lower, upper = certify.sqrt_enclosure(2)
    assert lower * lower <= 2 <= upper * upper
    with pytest.raises(ParameterRangeError):
        certify.sqrt_enclosure(-1)


def test_trig_enclosures():
    lower, upper = certify.cos_pi_fraction(Fraction(1, 3))
    assert lower <= Fraction(1, 2) <= upper
    lower, upper = certify.sin_pi_fraction(Fraction(1, 6))
    assert lower <= Fraction(1, 2) <= upper


def test_bound_constants_are_ordered():
    for d in (2, 3, 4):
        for degree in range(0, 9, 2):
            thm3 = certify.theorem_bound(degree, d)
            even = certify.even_index_bound(degree, d)
            proof = certify.proof_bound(degree // 2, d)
            assert thm3[1] < even[0]
            assert proof == even


def test_precision_is_restored():
    before = mpmath.iv.prec
    with certify.interval_precision(300):
        assert mpmath.iv.prec == 300
    assert mpmath.iv.prec == before


def test_certainly_at_least():
    assert certify.certainly_at_least(Fraction(1, 2), Fraction(1, 2))
    assert certify.certainly_at_least(1, Fraction(99, 100))
    assert not certify.certainly_at_least(Fraction(1, 3), Fraction(1, 2))
