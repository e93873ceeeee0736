from fractions import Fraction

import pytest

from errors import DimensionMismatchError, ParameterRangeError, PolynomialSyntaxError
from polycore import (Polynomial, evaluate, format_polynomial, homogeneous_component, laplacian,
                      monomials_of_degree, parse_polynomial, random_polynomial, substitute_radial)


def test_monomial_product(poly):
    x1 = Polynomial.variable(2, 1)
    assert x1 * x1 == poly("x1^2", 2)


def test_additive_inverse(poly):
    p = poly("3/2*x1^2*x3 - x2 + 1")
    assert (p + (-p)).is_zero()
    assert p - p == 0


def test_scalar_multiply(poly):
    q = poly("x1^2 + x2^2 - 1")
    assert q * Fraction(1, 2) == poly("1/2*x1^2 + 1/2*x2^2 - 1/2")
    assert Fraction(1, 2) * q == q / 2


def test_laplacian_examples(poly):
    assert laplacian(poly("x1^2 - x2^2")).is_zero()
    assert laplacian(poly("x1^2", 2)) == 2
    for d in (2, 3, 5):
        assert laplacian(Polynomial.radial_square(d)) == 2 * d


def test_homogeneous_component_examples(poly):
    q = poly("x2^2 - x1")
    assert homogeneous_component(q, 2) == poly("x2^2", 2)
    assert homogeneous_component(q, 1) == poly("-x1", 2)
    assert homogeneous_component(q, 7).is_zero()


def test_evaluate_examples(poly):
    value = evaluate(poly("x1^2 + x2^2"), [Fraction(3, 5), Fraction(4, 5)], precision=128)
    assert abs(value - 1) < 1e-35
    assert evaluate(Polynomial.constant(3, 7), [1, 2, 3]) == 7
    assert evaluate(poly("x1*x2"), [2, 3]) == 6


def test_evaluate_exact(poly):
    assert poly("x1^2 + x2^2").evaluate_exact([Fraction(3, 5), Fraction(4, 5)]) == 1


def test_substitute_radial_examples(poly):
    one = Polynomial.constant(2, 1)
    assert substitute_radial(one, 2) == poly("x1^2 + x2^2")
    x1 = Polynomial.variable(2, 1)
    assert substitute_radial(x1, 0) == x1
    assert substitute_radial(one, 4) == poly("x1^4 + 2*x1^2*x2^2 + x2^4")


def test_substitute_radial_rejects_odd_power():
    with pytest.raises(ParameterRangeError):
        Polynomial.constant(2, 1).substitute_radial(3)


def test_ring_axioms_on_random_triples(rng):
    for _ in range(10):
        p, q, r = (random_polynomial(3, 3, rng, density=0.5) for _ in range(3))
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p


def test_laplacian_is_linear(rng):
    for _ in range(10):
        p, q = random_polynomial(3, 4, rng), random_polynomial(3, 4, rng)
        a = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10)))
        b = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10)))
        assert (a * p + b * q).laplacian() == a * p.laplacian() + b * q.laplacian()


def test_components_sum_back(rng):
    for _ in range(10):
        p = random_polynomial(4, 5, rng, density=0.4)
        total = Polynomial.zero(4)
        for i in range(p.degree + 1):
            total = total + p.homogeneous_component(i)
        assert total == p


def test_degree_of_product(rng):
    for _ in range(10):
        p, q = random_polynomial(2, 3, rng), random_polynomial(2, 4, rng)
        assert (p * q).degree == p.degree + q.degree


def test_round_trip(rng):
    for _ in range(20):
        p = random_polynomial(3, 4, rng, density=0.5) * Fraction(int(rng.integers(1, 7)), 7)
        assert parse_polynomial(format_polynomial(p), 3) == p


def test_canonical_text():
    text = "3/2*x1^2*x3 - x2 + 1"
    assert format_polynomial(parse_polynomial(text)) == text
    assert str(parse_polynomial("1 - x1")) == "-x1 + 1"
    assert str(Polynomial.zero(2)) == "0"


def test_parse_infers_and_checks_dimension():
    assert parse_polynomial("x3 + 1").dimension == 3
    assert parse_polynomial("x1", 4).dimension == 4
    with pytest.raises(DimensionMismatchError):
        parse_polynomial("x3", 2)


@pytest.mark.parametrize("text", ["", "x1 +", "x1 ++ x2", "2*", "x0", "y1", "1/0", "x1^"])
def test_parse_rejects_malformed(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial(text)


def test_mixed_dimensions_rejected():
    with pytest.raises(DimensionMismatchError):
        Polynomial.variable(2, 1) + Polynomial.variable(3, 1)


def test_swap_and_permute(poly):
    assert poly("x1^2*x2").swap_variables(1, 2) == poly("x1*x2^2")
    p = poly("x1 + 2*x2^2 + 3*x3^3")
    assert p.permute_variables((3, 1, 2)) == poly("x3 + 2*x1^2 + 3*x2^3")


def test_monomials_of_degree_order():
    assert monomials_of_degree(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(monomials_of_degree(4, 3)) == 20


def test_constants_hash_like_scalars():
    three = Polynomial.constant(2, 3)
    assert three == 3 and hash(three) == hash(3)
    assert hash(Polynomial.zero(3)) == hash(0)
    assert hash(Polynomial.constant(2, Fraction(1, 2))) == hash(Fraction(1, 2))
    assert len({three, 3, Fraction(3)}) == 1


def test_partial_derivatives(poly):
    p = poly("x1^3*x2 - 2*x2^2 + 5")
    assert p.partial(1) == poly("3*x1^2*x2")
    assert p.partial(2) == poly("x1^3 - 4*x2")
    # summed second partials give the Laplacian
    assert p.partial(1).partial(1) + p.partial(2).partial(2) == laplacian(p)
    with pytest.raises(DimensionMismatchError):
        p.partial(3)
