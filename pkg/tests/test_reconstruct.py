import random
from fractions import Fraction

import pytest

from conftest import FERMAT4_POINTS, random_form, random_invertible, random_points
from eigenscheme_kit.constructions import fermat, fermat_eigenpoints
from eigenscheme_kit.eigen import Convention, GeneratorTriple, Tensor, generators
from eigenscheme_kit.errors import IdentityViolatedError, InconsistentSystemError
from eigenscheme_kit.points import PointSet
from eigenscheme_kit.poly import X0, X1, X2, isotropic_conic, parse_poly, proportional
from eigenscheme_kit.reconstruct import (
    RecognitionReport,
    Stage,
    gradient_solve,
    koszul_solve,
    linear_syzygies,
    normalize_even,
    normalize_triple,
    recognize_partially_symmetric,
    recognize_symmetric,
    reconstruct_from_triple,
)

ROTATION = [[Fraction(2, 3), Fraction(-1, 3), Fraction(2, 3)],
            [Fraction(2, 3), Fraction(2, 3), Fraction(-1, 3)],
            [Fraction(-1, 3), Fraction(2, 3), Fraction(2, 3)]]


def _transpose(M):
    return [[M[j][i] for j in range(3)] for i in range(3)]


def test_linear_syzygies_of_minors(rng):
    t = generators(random_form(rng, 4))
    syz = linear_syzygies(*t.f)
    assert len(syz) == 1
    l = syz[0]
    assert (l[0] * t.f[0] + l[1] * t.f[1] + l[2] * t.f[2]).is_zero()
    assert proportional(l[0], X0) is not None


def test_no_linear_syzygy():
    h = (parse_poly("x0^3"), parse_poly("x1^3"), parse_poly("x2^3"))
    assert linear_syzygies(*h) == []


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_koszul_solve_inverts_generators(rng, d):
    T = Tensor(tuple(random_form(rng, d - 1, -4, 4) for _ in range(3)))
    t = generators(T)
    S = koszul_solve(t)
    assert generators(S) == t
    # same triple given in the other convention
    assert generators(koszul_solve(t.to(Convention.ALTERNATING))) == t


def test_koszul_solve_rejects_non_laguerre_triple():
    t = GeneratorTriple((X0, X1, X2))
    with pytest.raises(IdentityViolatedError):
        koszul_solve(t)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_gradient_solve_kernel_parity(rng, d):
    f = random_form(rng, d)
    g, h, kd = gradient_solve(koszul_solve(generators(f)))
    assert kd == (1 if d % 2 == 0 else 0)
    assert proportional(normalize_triple(generators(g)).f[0], normalize_triple(generators(f)).f[0]) is not None
    assert normalize_triple(generators(g)) == normalize_triple(generators(f))


def test_gradient_solve_rejects_non_gradient(rng):
    T = Tensor((X1 * X1, X2 * X2, X0 * X0))
    with pytest.raises(InconsistentSystemError):
        gradient_solve(T)


def test_normalize_even_removes_q_power():
    f = fermat(4)
    q2 = isotropic_conic() ** 2
    assert normalize_even(f + q2.scale(7)) == normalize_even(f)
    assert normalize_even(f).coefficient((0, 0, 4)) == 0
    with pytest.raises(ValueError):
        normalize_even(fermat(3))


def test_reconstruct_from_triple(rng):
    f = random_form(rng, 5)
    out = reconstruct_from_triple(generators(f))
    assert out["kernel_dim"] == 0
    assert out["symmetric_f"] == f.monic()
    T = Tensor((X1 * X1, X2 * X2, X0 * X0))
    out = reconstruct_from_triple(generators(T))
    assert out["symmetric_f"] is None and generators(out["tensor"]) == generators(T)


def test_fermat4_recognized_as_symmetric():
    Z = PointSet(FERMAT4_POINTS)
    r = recognize_symmetric(Z, 4)
    assert r.is_eigenscheme and r.failure_stage == Stage.NONE
    assert r.kernel_dim == 1
    assert normalize_triple(generators(r.symmetric_f)) == normalize_triple(generators(fermat(4)))
    # f is Fermat modulo q^2
    diff = r.symmetric_f - normalize_even(fermat(4)).monic()
    assert diff.is_zero() or proportional(diff, isotropic_conic() ** 2) is not None


def test_fermat3_recognized_uniquely():
    r = recognize_symmetric(fermat_eigenpoints(3), 3)
    assert r.is_eigenscheme and r.kernel_dim == 0
    assert r.symmetric_f == fermat(3)


def test_fermat6():
    Z = fermat_eigenpoints(6)
    assert len(Z) == 31
    r = recognize_symmetric(Z, 6)
    assert r.is_eigenscheme
    assert normalize_triple(generators(r.symmetric_f)) == normalize_triple(generators(fermat(6)))


def test_rotated_fermat_stays_symmetric():
    R = ROTATION
    Z = PointSet(FERMAT4_POINTS).transform(R)
    r = recognize_symmetric(Z, 4)
    assert r.is_eigenscheme
    # eigenpoints of f(R^T x) are R times those of f
    g = fermat(4).substitute_linear(_transpose(R))
    assert normalize_triple(generators(r.symmetric_f)) == normalize_triple(generators(g))


def test_non_orthogonal_transform_is_only_partially_symmetric():
    rng = random.Random(3)
    M = random_invertible(rng)
    Z = PointSet(FERMAT4_POINTS).transform(M)
    assert recognize_partially_symmetric(Z, 4).is_eigenscheme
    r = recognize_symmetric(Z, 4)
    assert not r.is_eigenscheme
    assert r.failure_stage == Stage.PARTIAL_IDENTITY_FAIL
    assert r.tensor is None and r.triple is not None


def test_wrong_cardinality():
    r = recognize_partially_symmetric(PointSet(FERMAT4_POINTS[:12]), 4)
    assert r.failure_stage == Stage.CARDINALITY


def test_generic_points_fail_ideal_dim(rng):
    Z = PointSet(random_points(rng, 13, bound=40))
    r = recognize_partially_symmetric(Z, 4)
    assert r.failure_stage == Stage.IDEAL_DIM and not r.is_eigenscheme


def test_points_on_a_cubic_fail_ideal_dim():
    # 13 points on x0*x1*x2 = 0 have dim I(4) = 3 but a cubic generator
    pts = [(0, 1, k) for k in range(1, 6)] + [(1, 0, k) for k in range(1, 5)] + [(1, k, 0) for k in range(1, 5)]
    r = recognize_partially_symmetric(PointSet(pts), 4)
    assert r.failure_stage == Stage.IDEAL_DIM


def _meet(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def test_dependent_linear_forms():
    # ideal (x0*k, x1*k, h): its linear syzygy (x1, -x0, 0) has dependent entries
    k_lines = [(1, 2, -3), (2, -1, 5), (1, 1, 7)]
    h_lines = [(1, -3, 0), (3, 1, -2), (-1, 4, 11), (5, 2, -13)]
    Z = PointSet([_meet(a, b) for a in k_lines for b in h_lines] + [(0, 0, 1)])
    r = recognize_partially_symmetric(Z, 4)
    assert r.failure_stage == Stage.DEPENDENT_LINEAR_FORMS


def test_report_json_round_trip():
    r = recognize_symmetric(PointSet(FERMAT4_POINTS), 4)
    back = RecognitionReport.from_json(r.to_json())
    assert back.symmetric_f == r.symmetric_f and back.triple == r.triple
    assert back.failure_stage == r.failure_stage and back.kernel_dim == r.kernel_dim


def test_preconditions_imply_recognition():
    from eigenscheme_kit.points import eigenscheme_preconditions

    rng = random.Random(8)
    configs = [
        (fermat_eigenpoints(3), 3),
        (PointSet(FERMAT4_POINTS), 4),
        (PointSet(FERMAT4_POINTS).transform(ROTATION), 4),
        (PointSet(FERMAT4_POINTS).transform(random_invertible(rng)), 4),
    ]
    for Z, d in configs:
        assert eigenscheme_preconditions(Z, d).all_pass
        r = recognize_partially_symmetric(Z, d)
        assert r.is_eigenscheme
        # the triple satisfies the linear syzygy and comes from the tensor
        assert generators(r.tensor) == r.triple
