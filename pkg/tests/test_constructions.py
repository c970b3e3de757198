from fractions import Fraction

import pytest

from conftest import FERMAT4_POINTS
from eigenscheme_kit.algebra import I, gaussian
from eigenscheme_kit.constructions import (
    TangentConicFamily,
    conic_tangent,
    eigen_line,
    fermat,
    fermat_eigenpoints,
    lambda_of,
    pencil_parameter,
    secant_line,
    tangent_family_eigenstructure,
)
from eigenscheme_kit.eigen import generators
from eigenscheme_kit.errors import (
    EqualPointsError,
    NotOnIsotropicConicError,
    NotTangentFamilyError,
    RootsNotInFieldError,
    ZeroFormError,
)
from eigenscheme_kit.points import ProjectivePoint
from eigenscheme_kit.poly import HomogeneousPoly, isotropic_conic, parse_poly, proportional

P = (1, I, 0)
Q = (3 * I, -4 * I, 5)
LINE = parse_poly("5*x0+5*i*x1-(4+3*i)*x2")
CONIC = parse_poly(
    "(1-i)*x0^2+(1+i)*x1^2+(49/25-7/25*i)*x2^2+2*x0*x1-(6/5-8/5*i)*x0*x2-(8/5+6/5*i)*x1*x2"
)


@pytest.mark.parametrize("d", [3, 4, 6])
def test_fermat_points_are_eigenpoints(d):
    Z = fermat_eigenpoints(d)
    assert len(Z) == d * d - d + 1
    t = generators(fermat(d))
    for Pt in Z:
        assert all(fi(Pt) == 0 for fi in t.f)


def test_fermat4_order():
    assert list(fermat_eigenpoints(4)) == [ProjectivePoint(p) for p in FERMAT4_POINTS]


def test_fermat_outside_gaussian_field():
    with pytest.raises(RootsNotInFieldError):
        fermat_eigenpoints(5)
    with pytest.raises(ValueError):
        fermat(1)


def test_lambda_of_example_conic():
    assert lambda_of(CONIC, LINE) == gaussian(0, Fraction(-2, 25))
    assert eigen_line(LINE) == ProjectivePoint((4 - 3 * I, 3 + 4 * I, -5))


def test_example_conic_is_in_the_pencil():
    l = secant_line(P, Q)
    assert proportional(l, LINE) is not None
    assert conic_tangent(P, Q, -I) == CONIC


def test_pencil_parameter():
    assert pencil_parameter(CONIC, P, Q) == -I
    assert pencil_parameter(CONIC.scale(3 + I), P, Q) == -I
    with pytest.raises(NotTangentFamilyError):
        pencil_parameter(parse_poly("x0^2+2*x1^2+x2^2"), P, Q)
    with pytest.raises(NotTangentFamilyError):
        pencil_parameter(secant_line(P, Q) ** 2, P, Q)


def test_lambda_scales_with_the_line():
    # rescaling l by s divides lambda by s^2
    assert lambda_of(CONIC, LINE.scale(2)) == lambda_of(CONIC, LINE) / 4


def test_lambda_rejects_non_tangent_conic():
    with pytest.raises(NotTangentFamilyError):
        lambda_of(parse_poly("x0^2+2*x1^2+x2^2"), LINE)


def test_lambda_from_fallback_when_ratios_vanish():
    # l = x0 has d_i l * d_j l = 0 for every pair
    P2, Q2 = (0, 1, I), (0, 1, -I)
    c = conic_tangent(P2, Q2, 3)
    l = secant_line(P2, Q2)
    assert proportional(l, parse_poly("x0")) is not None
    lam = lambda_of(c, l)
    # c = q + mu*l^2 gives lambda = 2*mu for the line used
    assert lam == 6


def test_pencil_input_checks():
    with pytest.raises(NotOnIsotropicConicError):
        conic_tangent((1, 0, 0), Q, 1)
    with pytest.raises(EqualPointsError):
        secant_line(P, P)
    with pytest.raises(ZeroFormError):
        eigen_line(HomogeneousPoly.zero(1))


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("with_line", [False, True])
def test_tangent_family_factorization(s, with_line):
    mus = [-I, 2, Fraction(1, 3) + I][:s]
    fam = TangentConicFamily.from_mus(P, Q, mus)
    es = tangent_family_eigenstructure(fam.l, fam.conics, with_line)
    assert es.point == eigen_line(fam.l)
    t = generators(fam.form(with_line))
    # every generator vanishes on the curve and at the isolated point
    assert all(fi(es.point.coords) == 0 for fi in t.f)
    expected_degree = 2 * s if with_line else 2 * (s - 1)
    assert es.curve.degree == expected_degree
    assert (es.line is None) == with_line


def test_eigen_point_is_the_pole_of_the_line():
    # E(l) is the pole of l with respect to q
    E = eigen_line(LINE)
    assert proportional(HomogeneousPoly.linear(E.coords), LINE) is not None
    assert isotropic_conic()(E.coords) != 0


def test_family_json():
    fam = TangentConicFamily.from_mus(P, Q, [-I])
    obj = fam.to_json()
    assert parse_poly(obj["conics"][0]) == CONIC


def test_trivial_pencil_members():
    assert conic_tangent(P, Q, 0) == isotropic_conic()
    assert lambda_of(isotropic_conic(), LINE) == 0


def _tangent_to_q_at(curve, pt):
    if curve(pt) != 0:
        return False
    a = [g(pt) for g in curve.gradient()]
    b = [g(pt) for g in isotropic_conic().gradient()]
    cross = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])
    # a singular point of the curve counts as tangent
    return all(x == 0 for x in cross)


@pytest.mark.parametrize("s, with_line", [(1, True), (2, False), (2, True), (3, False), (3, True)])
def test_curve_component_is_tangent_to_q(s, with_line):
    fam = TangentConicFamily.from_mus(P, Q, [-I, 2, Fraction(1, 3) + I][:s])
    curve = tangent_family_eigenstructure(fam.l, fam.conics, with_line).curve
    assert _tangent_to_q_at(curve, P) and _tangent_to_q_at(curve, Q)
