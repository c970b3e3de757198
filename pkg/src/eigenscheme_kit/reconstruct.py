"""Recognizing eigenschemes among point configurations and recovering tensors.

The pipeline: a basis ``h`` of ``I_Z(d)`` with a linear syzygy
``l0 h0 + l1 h1 + l2 h2 = 0`` is turned into a triple with the Koszul
syzygy ``x0 f0 + x1 f1 + x2 f2 = 0`` by the change of variables sending the
``l_i`` to the ``x_i``; a linear solve then yields a tensor whose minors are
that triple, and for symmetric input a second solve recovers the form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .algebra import ExactMatrix, determinant, nullspace_basis, solve_particular
from .eigen import (
    Convention,
    GeneratorTriple,
    Tensor,
    as_tensor,
    divergence_residual,
    generators,
    verify_koszul_identity,
)
from .errors import (
    DegreeMismatchError,
    DegreeTooSmallError,
    DuplicatePointsError,
    IdentityViolatedError,
    InconsistentSystemError,
)
from .points import as_pointset, graded_betti, ideal_basis
from .poly import HomogeneousPoly, isotropic_conic, monomial_index, monomials


class Stage(str, enum.Enum):
    CARDINALITY = "Cardinality"
    IDEAL_DIM = "IdealDim"
    NO_LINEAR_SYZYGY = "NoLinearSyzygy"
    DEPENDENT_LINEAR_FORMS = "DependentLinearForms"
    PARTIAL_IDENTITY_FAIL = "PartialIdentityFail"
    GRADIENT_INCONSISTENT = "GradientInconsistent"
    NONE = "None"


@dataclass
class RecognitionReport:
    is_eigenscheme: bool
    failure_stage: Stage = Stage.NONE
    tensor: Optional[Tensor] = None
    triple: Optional[GeneratorTriple] = None
    symmetric_f: Optional[HomogeneousPoly] = None
    kernel_dim: int = 0
    syzygy_dim: int = 0
    detail: str = ""

    def to_json(self) -> dict:
        out = {
            "is_eigenscheme": self.is_eigenscheme,
            "failure_stage": self.failure_stage.value,
            "kernel_dim": self.kernel_dim,
            "syzygy_dim": self.syzygy_dim,
            "tensor": [g.to_string() for g in self.tensor.g] if self.tensor else None,
            "triple": self.triple.to_json() if self.triple else None,
            "symmetric_f": self.symmetric_f.to_string() if self.symmetric_f is not None else None,
        }
        if self.detail:
            out["detail"] = self.detail
        return out

    @classmethod
    def from_json(cls, obj) -> "RecognitionReport":
        from .poly import parse_poly

        tensor = Tensor(tuple(parse_poly(s) for s in obj["tensor"])) if obj.get("tensor") else None
        triple = GeneratorTriple.from_json(obj["triple"]) if obj.get("triple") else None
        f = parse_poly(obj["symmetric_f"]) if obj.get("symmetric_f") else None
        return cls(
            is_eigenscheme=bool(obj["is_eigenscheme"]),
            failure_stage=Stage(obj["failure_stage"]),
            tensor=tensor,
            triple=triple,
            symmetric_f=f,
            kernel_dim=int(obj.get("kernel_dim", 0)),
            syzygy_dim=int(obj.get("syzygy_dim", 0)),
            detail=obj.get("detail", ""),
        )


def linear_syzygies(h0: HomogeneousPoly, h1: HomogeneousPoly, h2: HomogeneousPoly) -> list[tuple]:
    """Basis of the triples of linear forms ``(l0, l1, l2)`` with ``sum l_i h_i = 0``."""
    hs = (h0, h1, h2)
    if len({h.degree for h in hs}) != 1:
        raise DegreeMismatchError("linear syzygies need forms of one degree")
    d = h0.degree
    idx = monomial_index(d + 1)
    cols = []
    for h in hs:
        for j in range(3):
            col = [0] * len(idx)
            for e, c in h.terms.items():
                ne = list(e)
                ne[j] += 1
                col[idx[tuple(ne)]] = c
            cols.append(col)
    rows = [[cols[k][r] for k in range(9)] for r in range(len(idx))]
    out = []
    for v in nullspace_basis(ExactMatrix.from_rows(rows, 9)):
        out.append(tuple(HomogeneousPoly.linear(v[3 * i : 3 * i + 3]) for i in range(3)))
    return out


def koszul_solve(t: GeneratorTriple) -> Tensor:
    """A tensor ``(g0, g1, g2)`` whose Koszul minors are ``t``.

    The solution is unique up to ``g -> g + x*h``; the one returned sets all
    free coefficients to zero.
    """
    t = t.to(Convention.KOSZUL)
    if not verify_koszul_identity(t):
        raise IdentityViolatedError("the triple does not satisfy x0 f0 + x1 f1 + x2 f2 = 0")
    d = t.d
    if d < 1:
        raise DegreeTooSmallError("generators have degree at least 1")
    gm = monomials(d - 1)
    fidx = monomial_index(d)
    n = len(gm)
    # f0 = x1 g2 - x2 g1, f1 = x2 g0 - x0 g2, f2 = x0 g1 - x1 g0
    pattern = {0: ((1, 2, 1), (2, 1, -1)), 1: ((2, 0, 1), (0, 2, -1)), 2: ((0, 1, 1), (1, 0, -1))}
    rows = [[0] * (3 * n) for _ in range(3 * len(fidx))]
    rhs = [0] * (3 * len(fidx))
    for i in range(3):
        for var, gi, sign in pattern[i]:
            for k, e in enumerate(gm):
                ne = list(e)
                ne[var] += 1
                rows[i * len(fidx) + fidx[tuple(ne)]][gi * n + k] += sign
        for e, c in t.f[i].terms.items():
            rhs[i * len(fidx) + fidx[e]] = c
    sol = solve_particular(ExactMatrix.from_rows(rows, 3 * n), rhs)
    if sol is None:
        raise IdentityViolatedError("no tensor has these minors")
    return Tensor(tuple(HomogeneousPoly.from_vector(d - 1, sol[i * n : (i + 1) * n]) for i in range(3)))


def _gradient_system(g, d: int):
    fm = monomials(d)
    hm = monomials(d - 2)
    gidx = monomial_index(d - 1)
    nf, nh, ng = len(fm), len(hm), len(gidx)
    rows = [[0] * (nf + nh) for _ in range(3 * ng)]
    rhs = [0] * (3 * ng)
    for i in range(3):
        for k, e in enumerate(fm):
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                rows[i * ng + gidx[tuple(ne)]][k] += e[i]
        for k, e in enumerate(hm):
            ne = list(e)
            ne[i] += 1
            rows[i * ng + gidx[tuple(ne)]][nf + k] -= 1
        if g is not None:
            for e, c in g[i].terms.items():
                rhs[i * ng + gidx[e]] = c
    return ExactMatrix.from_rows(rows, nf + nh), rhs, nf


def gradient_solve(T) -> tuple[HomogeneousPoly, HomogeneousPoly, int]:
    """Solve ``d_i f = g_i + x_i h`` for ``f`` of degree ``d`` and ``h`` of degree ``d-2``.

    Returns the particular solution with free coefficients zero and the
    dimension of the homogeneous solution space (1 for even ``d``, where
    ``f = q^(d/2)`` is a solution, 0 for odd ``d``).  Raises
    :class:`InconsistentSystemError` when ``T`` is not a gradient up to a
    radial shift.
    """
    T = as_tensor(T)
    d = T.d
    if d < 2:
        raise DegreeTooSmallError("gradient recovery needs d >= 2")
    M, rhs, nf = _gradient_system(T.g, d)
    sol = solve_particular(M, rhs)
    if sol is None:
        raise InconsistentSystemError("the tensor is not symmetric up to a radial shift")
    kernel_dim = len(nullspace_basis(M))
    f = HomogeneousPoly.from_vector(d, sol[:nf])
    h = HomogeneousPoly.from_vector(d - 2, sol[nf:])
    return f, h, kernel_dim


def normalize_even(f: HomogeneousPoly) -> HomogeneousPoly:
    """Subtract the multiple of ``q^(d/2)`` that clears the ``x2^d`` coefficient."""
    d = f.degree
    if d % 2:
        raise ValueError("normalize_even needs an even degree")
    mu = f.coefficient((0, 0, d))
    if not mu:
        return f
    return f - (isotropic_conic() ** (d // 2)).scale(mu)


def normalize_triple(t: GeneratorTriple) -> GeneratorTriple:
    """Scale so the leading coefficient of the first nonzero form is 1."""
    for fi in t.f:
        if not fi.is_zero():
            return t.scale(1 / fi.leading_coefficient())
    return t


def _fail(stage: Stage, detail: str = "", **kw) -> RecognitionReport:
    return RecognitionReport(is_eigenscheme=False, failure_stage=stage, detail=detail, **kw)


def recognize_partially_symmetric(Z, d: int) -> RecognitionReport:
    """Decide whether ``Z`` is the eigenscheme of a tensor of order ``d``."""
    try:
        Z = as_pointset(Z)
    except DuplicatePointsError as exc:
        return _fail(Stage.CARDINALITY, str(exc))
    expected = d * d - d + 1
    if len(Z) != expected:
        return _fail(Stage.CARDINALITY, f"{len(Z)} points, expected {expected}")
    h = ideal_basis(Z, d)
    if len(h) != 3:
        return _fail(Stage.IDEAL_DIM, f"dim I_Z({d}) = {len(h)}")
    betas, _ = graded_betti(Z)
    if betas != [d, d, d]:
        return _fail(Stage.IDEAL_DIM, f"minimal generators in degrees {betas}")
    syz = linear_syzygies(*h)
    if not syz:
        return _fail(Stage.NO_LINEAR_SYZYGY)
    ls = syz[0]
    A = [[l.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] for l in ls]
    if determinant(ExactMatrix.from_rows(A)) == 0:
        return _fail(Stage.DEPENDENT_LINEAR_FORMS, syzygy_dim=len(syz))
    # f_j = sum_i A[i][j] h_i, so that sum_j x_j f_j = sum_i l_i h_i = 0
    f = tuple(
        sum((h[i].scale(A[i][j]) for i in range(3)), HomogeneousPoly.zero(d)) for j in range(3)
    )
    triple = GeneratorTriple(f, Convention.KOSZUL)
    if not verify_koszul_identity(triple):
        raise AssertionError("change of basis failed to produce the Koszul syzygy")
    tensor = koszul_solve(triple)
    if generators(tensor) != triple:
        raise AssertionError("recovered tensor does not reproduce the generators")
    return RecognitionReport(
        is_eigenscheme=True, tensor=tensor, triple=triple, syzygy_dim=len(syz)
    )


def recognize_symmetric(Z, d: int) -> RecognitionReport:
    """Decide whether ``Z`` is the eigenscheme of a symmetric tensor and recover the form.

    For even ``d`` the form is only defined modulo ``q^(d/2)`` and is returned
    with its ``x2^d`` coefficient cleared; in all cases it is scaled to be monic.
    """
    report = recognize_partially_symmetric(Z, d)
    if not report.is_eigenscheme:
        return report
    triple = report.triple
    if not divergence_residual(triple).is_zero():
        return _fail(Stage.PARTIAL_IDENTITY_FAIL, triple=triple, syzygy_dim=report.syzygy_dim)
    try:
        f, _, kernel_dim = gradient_solve(report.tensor)
    except InconsistentSystemError as exc:
        return _fail(Stage.GRADIENT_INCONSISTENT, str(exc), triple=triple, syzygy_dim=report.syzygy_dim)
    if d % 2 == 0:
        f = normalize_even(f)
    f = f.monic()
    return RecognitionReport(
        is_eigenscheme=True,
        tensor=Tensor.from_form(f),
        triple=triple,
        symmetric_f=f,
        kernel_dim=kernel_dim,
        syzygy_dim=report.syzygy_dim,
    )


def reconstruct_from_triple(t: GeneratorTriple) -> dict:
    """Tensor and, when the symmetric identities hold, the form behind a triple."""
    tensor = koszul_solve(t)
    out = {"tensor": tensor, "symmetric_f": None, "kernel_dim": None}
    if divergence_residual(t).is_zero():
        f, _, kernel_dim = gradient_solve(tensor)
        if f.degree % 2 == 0:
            f = normalize_even(f)
        out["symmetric_f"] = f.monic()
        out["kernel_dim"] = kernel_dim
    return out


__all__ = [
    "RecognitionReport",
    "Stage",
    "gradient_solve",
    "koszul_solve",
    "linear_syzygies",
    "normalize_even",
    "normalize_triple",
    "recognize_partially_symmetric",
    "recognize_symmetric",
    "reconstruct_from_triple",
]
