from fractions import Fraction
from math import factorial

import pytest

import fischer
from errors import ParameterRangeError, QuadricError
from fischer import NonhyperbolicQuadric
from polycore import Polynomial, random_homogeneous, random_polynomial

ELLIPSE = NonhyperbolicQuadric((1, 1), (0, 0), -1)
PARABOLA = NonhyperbolicQuadric((0, 1), (-1, 0), 0)
SLAB = NonhyperbolicQuadric((0, 1), (0, 0), -1)
CYLINDER = NonhyperbolicQuadric((0, 1, 1), (0, 0, 0), -1)
ELLIPSOID = NonhyperbolicQuadric((1, 2, 3), (0, 0, 0), -1)
SHIFTED = NonhyperbolicQuadric((2, 1), (1, 0), Fraction(-1, 3))

QUADRICS = [ELLIPSE, PARABOLA, SLAB, CYLINDER, ELLIPSOID, SHIFTED]


def test_ellipse_example(poly):
    result = fischer.fischer_decompose(poly("x1^2", 2), ELLIPSE)
    assert result.s == Polynomial.constant(2, Fraction(1, 2))
    assert result.r == poly("1/2*x1^2 - 1/2*x2^2 + 1/2")
    assert result.residual_is_zero and result.laplacian_is_zero


def test_ellipse_boundary_value(poly):
    r = fischer.dirichlet_solve(poly("x1^2", 2), ELLIPSE)
    point = [Fraction(3, 5), Fraction(4, 5)]
    assert r.evaluate_exact(point) == Fraction(9, 25)


def test_paraboloid_example(poly):
    q = NonhyperbolicQuadric.from_polynomial(poly("x2^2 - x1"))
    assert q == PARABOLA
    result = fischer.fischer_decompose(poly("x2^2"), q)
    assert result.s == Polynomial.constant(2, 1)
    assert result.r == poly("x1", 2)


def test_slab_example(poly):
    result = fischer.fischer_decompose(poly("x2^2"), SLAB)
    assert result.r == Polynomial.constant(2, 1)


def test_harmonic_data_is_fixed(poly):
    h = poly("x1^2 - x2^2 + 3*x1*x2 - x1 + 2")
    for q in (ELLIPSE, PARABOLA, SLAB, SHIFTED):
        result = fischer.fischer_decompose(h, q)
        assert result.s.is_zero()
        assert result.r == h


def test_result_document(poly):
    document = fischer.fischer_decompose(poly("x1^2", 2), ELLIPSE).as_dict()
    assert document['s'] == '1/2'
    assert document['checks'] == {'residual_zero': True, 'laplacian_zero': True}


@pytest.mark.parametrize("q", QUADRICS, ids=str)
def test_random_decompositions(q, rng):
    qp = q.polynomial
    for _ in range(4):
        f = random_polynomial(q.dimension, 4, rng, density=0.6)
        result = fischer.fischer_decompose(f, q)
        assert qp * result.s + result.r == f
        assert result.r.laplacian().is_zero()
        assert result.s.degree <= f.degree - 2
        assert result.r.degree <= f.degree
        again = fischer.fischer_decompose(result.r, q)
        assert again.s.is_zero() and again.r == result.r


def test_linearity(rng):
    for q in (ELLIPSE, PARABOLA, CYLINDER):
        f = random_polynomial(q.dimension, 4, rng)
        g = random_polynomial(q.dimension, 3, rng)
        a, b = Fraction(2, 3), Fraction(-5, 7)
        combined = fischer.fischer_decompose(a * f + b * g, q)
        left = fischer.fischer_decompose(f, q)
        right = fischer.fischer_decompose(g, q)
        assert combined.r == a * left.r + b * right.r
        assert combined.s == a * left.s + b * right.s


def test_low_degree_data_is_its_own_solution(rng):
    f = random_polynomial(3, 1, rng)
    result = fischer.fischer_decompose(f, CYLINDER)
    assert result.s.is_zero()
    assert result.r == f


@pytest.mark.slow
@pytest.mark.parametrize("q", QUADRICS, ids=str)
def test_random_decompositions_acceptance(q, rng):
    qp = q.polynomial
    for trial in range(200 // len(QUADRICS) + 1):
        f = random_polynomial(q.dimension, 6 + trial % 5, rng, density=0.3)
        result = fischer.fischer_decompose(f, q)
        assert qp * result.s + result.r == f
        assert result.r.laplacian().is_zero()
        residual = fischer.boundary_residual(f, result.r, q, samples=100, precision=128)
        assert residual.points == 100
        assert residual.max_residual <= 1e-25


def test_dimension_mismatch(poly):
    with pytest.raises(ParameterRangeError):
        fischer.fischer_decompose(poly("x1^2", 3), ELLIPSE)


@pytest.mark.parametrize("text, clause", [
    ("x1*x2 + 1", "cross term"),
    ("x1^3 + x2^2", "degree"),
    ("x1^2 - x2^2 - 1", "nonnegative"),
    ("x1 + x2 + 1", "nonzero"),
])
def test_rejected_quadrics(poly, text, clause):
    with pytest.raises(QuadricError, match=clause):
        NonhyperbolicQuadric.from_polynomial(poly(text, 2))


def test_quadric_kinds(poly):
    assert ELLIPSE.kind == 'ellipsoid'
    assert ELLIPSOID.kind == 'ellipsoid'
    assert PARABOLA.kind == 'paraboloid'
    assert SLAB.kind == 'slab'
    assert CYLINDER.kind == 'ellipsoidal_cylinder'
    assert NonhyperbolicQuadric.from_polynomial(poly("x1^2 + x1 - 1")).kind in fischer.QUADRIC_KINDS


def test_beta_and_admissibility():
    assert ELLIPSE.beta == 0 and PARABOLA.beta == 1
    assert ELLIPSE.admissible_order_bound == 1
    assert PARABOLA.admissible_order_bound == Fraction(1, 2)
    assert ELLIPSE.is_admissible(Fraction(9, 10))
    assert not PARABOLA.is_admissible(Fraction(1, 2))


def test_quadric_round_trip(poly):
    text = "x1^2 + 2*x2^2 - x3 + 1/2"
    q = NonhyperbolicQuadric.from_polynomial(poly(text))
    assert q.squares == (1, 2, 0)
    assert q.linear == (0, 0, -1)
    assert q.constant == Fraction(1, 2)
    assert q.polynomial == poly(text)


def test_gauss_example(poly):
    gauss = fischer.gauss_decompose(poly("x1^2", 2))
    assert gauss.harmonic_part(2) == poly("1/2*x1^2 - 1/2*x2^2")
    assert gauss.harmonic_part(0) == Polynomial.constant(2, Fraction(1, 2))
    assert gauss.reconstruct() == poly("x1^2", 2)


def test_gauss_random(rng):
    for d, degree in ((2, 5), (3, 4), (4, 3)):
        f = random_homogeneous(d, degree, rng)
        gauss = fischer.gauss_decompose(f)
        assert gauss.reconstruct() == f
        for k, h in gauss.parts.items():
            assert h.laplacian().is_zero()
            assert h.is_zero() or (h.is_homogeneous() and h.degree == k)


def test_gauss_rejects_inhomogeneous(poly):
    with pytest.raises(ParameterRangeError):
        fischer.gauss_decompose(poly("x1^2 + x2"))


def test_cosine_on_slab():
    slab = NonhyperbolicQuadric((1, 0), (0, 0), -1)
    data = fischer.cosine_series(2, 10)
    r_series, diagnostics = fischer.dirichlet_solve_series(data, slab)
    partial_sum = sum((Fraction((-1) ** k, factorial(2 * k)) for k in range(6)), Fraction(0))
    assert r_series.polynomial() == Polynomial.constant(2, partial_sum)
    assert diagnostics.truncation_degree == 10
    # order 1 sits exactly on the boundary for beta = 0
    assert diagnostics.admissible is False
    assert diagnostics.warnings


def test_exponential_series_parts():
    data = fischer.exponential_series(2, 4)
    assert data.truncation_degree == 4
    assert data.parts[3] == Polynomial.monomial(2, (3, 0), Fraction(1, 6))


def test_constant_series():
    data = fischer.SeriesData.from_polynomial(Polynomial.constant(2, 3), declared_order=0.5)
    r_series, diagnostics = fischer.dirichlet_solve_series(data, PARABOLA)
    assert r_series.polynomial() == Polynomial.constant(2, 3)
    assert diagnostics.s_norms == []
    assert diagnostics.admissible is False
    assert diagnostics.as_dict()['admissible_bound'] == '1/2'


def test_series_rejects_bad_parts(poly):
    with pytest.raises(ParameterRangeError):
        fischer.SeriesData((Polynomial.constant(2, 1), poly("x1^2", 2)))


def test_order_proxy_skips_low_degrees():
    proxies = fischer.order_proxy(fischer.exponential_series(2, 6).parts)
    assert proxies[:2] == [None, None]
    assert all(value > 0 for value in proxies[2:])


def test_stabilization_probe():
    slab = NonhyperbolicQuadric((1, 0), (0, 0), -1)
    rows = fischer.stabilization_probe(lambda n: fischer.cosine_series(2, n), slab, (8, 10, 12))
    assert rows[0] == {'from': 8, 'to': 10, 'degree': 0, 'max_change': Fraction(1, factorial(10))}
    assert all(row['max_change'] == 0 for row in rows if row['degree'] > 0)


def test_boundary_residual_ellipse(rng):
    f = random_polynomial(2, 4, rng)
    r = fischer.dirichlet_solve(f, ELLIPSE)
    residual = fischer.boundary_residual(f, r, ELLIPSE, samples=50)
    assert residual.points == 50 and residual.complete
    assert not residual.exact
    assert residual.max_residual <= 1e-30


def test_boundary_residual_paraboloid_is_exact(rng):
    f = random_polynomial(2, 5, rng)
    r = fischer.dirichlet_solve(f, PARABOLA)
    residual = fischer.boundary_residual(f, r, PARABOLA, samples=40)
    assert residual.exact
    assert residual.max_residual == 0


def test_boundary_residual_cylinder(rng):
    f = random_polynomial(3, 6, rng, density=0.5)
    r = fischer.dirichlet_solve(f, CYLINDER)
    residual = fischer.boundary_residual(f, r, CYLINDER, samples=30)
    assert residual.max_residual <= 1e-25


def test_leading_block_size():
    assert fischer.leading_block_size(2, 1) == 0
    assert fischer.leading_block_size(2, 12) == 11
    assert fischer.leading_block_size(6, 6) == 126
    assert fischer.leading_block_size(6, 7) == 252


def test_solver_cache_is_bounded():
    assert fischer._leading_solver.cache_info().maxsize is not None
