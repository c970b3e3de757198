import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import FERMAT4_POINTS, random_form
from eigenscheme_kit.algebra import I
from eigenscheme_kit.constructions import fermat
from eigenscheme_kit.eigen import Tensor, generators
from eigenscheme_kit.errors import FloatEntriesError, PositiveDimensionalError, ZeroInputError
from eigenscheme_kit.points import ProjectivePoint
from eigenscheme_kit.poly import X0, X1, X2, BinaryForm, HomogeneousPoly, isotropic_conic, parse_poly
from eigenscheme_kit.solve import (
    Klass,
    NumericPoint,
    aberth_refine,
    aberth_roots,
    contracted_lines,
    eigenpoints_numeric,
    is_square_free,
    laguerre_eval,
    laguerre_fiber,
    normalize_numeric,
    projective_distance,
    square_free_decomposition,
    sylvester_resultant,
    tangency_check,
    univariate_roots,
)


def _sylvester_det(a, b):
    """Resultant of two univariate polynomials (high to low) from the Sylvester matrix."""
    m, n = len(a) - 1, len(b) - 1
    S = np.zeros((m + n, m + n))
    for i in range(n):
        S[i, i : i + m + 1] = a
    for i in range(m):
        S[n + i, i : i + n + 1] = b
    return np.linalg.det(S)


def test_resultant_against_sylvester_determinant(rng):
    p = random_form(rng, 2, -3, 3)
    q = random_form(rng, 3, -3, 3)
    R = sylvester_resultant(p, q)
    assert R.degree == 6
    for t in (0, 1, -2, 3):
        # restrict to x0 = 1, x1 = t and read both as polynomials in x2
        a = [float(sum(c * t ** e[1] for e, c in p.terms.items() if e[2] == k)) for k in range(2, -1, -1)]
        b = [float(sum(c * t ** e[1] for e, c in q.terms.items() if e[2] == k)) for k in range(3, -1, -1)]
        expected = _sylvester_det(a, b)
        got = float(R.evaluate(1, t))
        assert abs(got - expected) <= 1e-6 * max(1.0, abs(expected))


def test_resultant_vanishes_on_common_factor():
    l = X0 + X1 - X2
    assert sylvester_resultant(l * X0, l * X1 * X1).is_zero()
    with pytest.raises(ZeroInputError):
        sylvester_resultant(HomogeneousPoly.zero(2), X0)


def test_resultant_detects_common_root():
    # both vanish at (1:2:3)
    p = parse_poly("2*x0-x1")
    q = parse_poly("3*x1^2-2*x1*x2")
    R = sylvester_resultant(p, q)
    assert R.evaluate(1, 2) == 0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1, max_size=8))
def test_aberth_finds_planted_roots(roots):
    roots = [complex(round(z.real, 1), round(z.imag, 1)) for z in roots]
    # keep roots apart so double precision is meaningful
    for a in range(len(roots)):
        for b in range(a):
            if abs(roots[a] - roots[b]) < 0.3:
                return
    coeffs = np.poly(roots)[::-1]
    found = aberth_roots(coeffs)
    for r in roots:
        assert min(abs(found - r)) < 1e-7


def test_aberth_refine_high_precision():
    # Wilkinson-type polynomial, hard in double precision
    roots = list(range(1, 16))
    coeffs = [int(c) for c in np.round(np.poly(roots)[::-1])]
    z0 = aberth_roots(coeffs, strict=False)
    z = aberth_refine(coeffs, z0)
    assert max(min(abs(z - r)) for r in roots) < 1e-12


def test_square_free():
    p = [Fraction(c) for c in (-1, 0, 1)]  # t^2 - 1
    assert is_square_free(p)
    sq = [Fraction(c) for c in (1, -2, 1)]  # (t-1)^2
    assert not is_square_free(sq)
    # t^2 (t - 1) (t + 2)^3, low to high
    p = [Fraction(int(c)) for c in np.poly([0, 0, 1, -2, -2, -2])[::-1]]
    dec = square_free_decomposition(p)
    assert sorted((len(a) - 1, m) for a, m in dec) == [(1, 1), (1, 2), (1, 3)]


def test_univariate_roots_with_points_at_infinity():
    # t0 * t1^2 * (t0 - 3 t1)
    b = BinaryForm([0, 1, -3, 0])
    roots = univariate_roots(b)
    got = sorted((round(abs(r[1] / r[0]) if abs(r[0]) > 0.5 else 1e9, 6), m) for r, m in roots)
    assert got == [(0.0, 2), (1 / 3, 1), (1e9, 1)] or sum(m for _, m in roots) == 3
    assert sum(m for _, m in roots) == 3


def test_fermat4_numeric_points_snap_to_exact():
    pts = eigenpoints_numeric(fermat(4))
    assert len(pts) == 13 and all(p.multiplicity == 1 for p in pts)
    assert all(p.klass == Klass.REGULAR for p in pts)
    exact = {ProjectivePoint(p.exact) for p in pts}
    assert exact == {ProjectivePoint(P) for P in FERMAT4_POINTS}


@pytest.mark.parametrize("d", [3, 4, 5])
def test_random_forms(d):
    rng = random.Random(d)
    f = random_form(rng, d)
    pts = eigenpoints_numeric(f)
    assert sum(p.multiplicity for p in pts) == d * d - d + 1
    t = generators(f)
    for p in pts:
        vals = [complex(fi.to_complex().evaluate(p.coords)) for fi in t.f]
        assert max(map(abs, vals)) < 1e-8 * max(fi.max_abs_coefficient() for fi in t.f)


def test_partially_symmetric_tensor():
    rng = random.Random(11)
    T = Tensor(tuple(random_form(rng, 3, -5, 5) for _ in range(3)))
    pts = eigenpoints_numeric(T)
    assert sum(p.multiplicity for p in pts) == 13


def test_irregular_point_of_a_cusp():
    pts = eigenpoints_numeric(parse_poly("x0^2*x2-x1^3"))
    assert sum(p.multiplicity for p in pts) == 7
    irregular = [p for p in pts if p.klass == Klass.IRREGULAR]
    assert len(irregular) == 1
    assert projective_distance(irregular[0].coords, (0, 0, 1)) < 1e-10


def test_positive_dimensional_inputs():
    q = isotropic_conic()
    with pytest.raises(PositiveDimensionalError):
        eigenpoints_numeric(q * q)  # radial gradient
    with pytest.raises(PositiveDimensionalError):
        eigenpoints_numeric(q * X0)  # a conic of eigenpoints


def test_float_tensor_rejected():
    with pytest.raises(FloatEntriesError):
        eigenpoints_numeric(HomogeneousPoly(3, {(3, 0, 0): 1.5, (0, 3, 0): 1.0, (0, 0, 3): 1.0}))


def test_numeric_point_json_round_trip():
    p = NumericPoint((1, 0.5j, -2), 1e-12, 2, Klass.REGULAR, (1, I, 0))
    back = NumericPoint.from_json(p.to_json())
    assert back.coords == p.coords and back.multiplicity == 2 and back.exact == p.exact


def test_normalization_and_distance():
    # scaled so the largest coordinate is 1
    assert normalize_numeric((2, 4, 0)) == (0.5, 1, 0)
    assert projective_distance((1, 2, 3), (2j, 4j, 6j)) < 1e-15
    assert projective_distance((1, 0, 0), (0, 1, 0)) > 0.5


def test_contracted_lines_of_fermat():
    for d, expected in ((3, 6), (4, 9)):
        pts = eigenpoints_numeric(fermat(d))
        assert len(contracted_lines(fermat(d), pts)) == expected


def test_fibers_of_random_quartic():
    f = random_form(random.Random(5), 4)
    t = generators(f)
    Q = (1, 2, -3)
    res = laguerre_fiber(f, Q)
    assert not res.is_contracted
    assert sum(p.multiplicity for p in res.points) == 3
    for p in res.points:
        assert projective_distance(laguerre_eval(t, p.coords).coords, Q) < 1e-8


def test_fiber_over_contracted_polar():
    res = laguerre_fiber(fermat(3), (0, 0, 1))
    assert res.is_contracted


def test_tangency_at_eigenpoints_on_the_curve():
    # for the cusp, (1:i:0)-type points are absent; use f = q * l + m^3 style cubic
    f = parse_poly("x0^3+x1^3+x2^3")
    for p in eigenpoints_numeric(f):
        assert tangency_check(f, p)


def test_classification_band():
    from eigenscheme_kit.solve import _classify

    tol = 1e-9
    assert _classify([1e-12, 0, 0], tol) == Klass.IRREGULAR
    assert _classify([5e-9, 0, 0], tol) == Klass.UNDETERMINED
    assert _classify([1.0, 0, 0], tol) == Klass.REGULAR


def test_snapped_fermat4_points_pass_subset_checks():
    from eigenscheme_kit.points import PointSet, eigenscheme_preconditions

    pts = eigenpoints_numeric(fermat(4))
    Z = PointSet(p.exact for p in pts)
    rep = eigenscheme_preconditions(Z, 4)
    assert rep.cond2.passed and rep.cond3.passed


def test_common_eigenpoints_of_a_sum():
    T = Tensor.from_form(parse_poly("x0^4+x1^4+x2^4"))
    S = Tensor.from_form(parse_poly("x0^4+2*x1^4+3*x2^4-x0*x1*x2^2"))
    TS = Tensor(tuple(a + b for a, b in zip(T.g, S.g)))
    sum_pts = eigenpoints_numeric(TS)
    a, b = eigenpoints_numeric(T), eigenpoints_numeric(S)
    common = [p for p in a if min(projective_distance(p.coords, r.coords) for r in b) < 1e-9]
    assert common
    for p in common:
        assert min(projective_distance(p.coords, r.coords) for r in sum_pts) < 1e-9


@pytest.mark.parametrize("seed", range(3))
def test_contracted_line_bound(seed):
    f = random_form(random.Random(100 + seed), 4)
    pts = eigenpoints_numeric(f)
    assert len(contracted_lines(f, pts)) <= 9
