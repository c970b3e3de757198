"""Exact special families: Fermat forms and conics tangent to the isotropic conic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .algebra import I, ExactMatrix, exact, solve_particular
from .eigen import generators
from .errors import (
    EqualPointsError,
    NotOnIsotropicConicError,
    NotTangentFamilyError,
    RootsNotInFieldError,
    ZeroFormError,
)
from .points import PointSet, ProjectivePoint, as_point, line_through
from .poly import VARS, HomogeneousPoly, isotropic_conic, monomial_index

_ROOTS_OF_UNITY = {1: (Fraction(1),), 2: (Fraction(1), Fraction(-1)), 4: (Fraction(1), I, Fraction(-1), -I)}
_PAIRS = ((1, 2), (2, 0), (0, 1))  # (i, j) of the Koszul generator f_k


def fermat(d: int) -> HomogeneousPoly:
    if d < 2:
        raise ValueError("Fermat forms start in degree 2")
    return HomogeneousPoly(d, {(d, 0, 0): 1, (0, d, 0): 1, (0, 0, d): 1})


def fermat_eigenpoints(d: int) -> PointSet:
    """Exact eigenpoints of the Fermat form of degree ``d`` in {3, 4, 6}.

    Nonzero coordinates are ``(d-2)``-th roots of unity.  Order: coordinate
    points, then two-term points grouped by root, then three-term points with
    ``(1:1:1)`` last.
    """
    roots = _ROOTS_OF_UNITY.get(d - 2)
    if roots is None:
        raise RootsNotInFieldError(f"the {d - 2}-th roots of unity are not Gaussian rationals")
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    for r in roots:
        for i, j in ((0, 1), (0, 2), (1, 2)):
            P = [0, 0, 0]
            P[i], P[j] = 1, r
            pts.append(tuple(P))
    triples = []
    for a, b in product(range(len(roots)), repeat=2):
        key = (a == 0 and b == 0, (a != 0) + (b != 0), (a, b))
        triples.append((key, (1, roots[a], roots[b])))
    pts.extend(P for _, P in sorted(triples, key=lambda kv: kv[0]))
    return PointSet(pts)


def eigen_line(l: HomogeneousPoly) -> ProjectivePoint:
    """The isolated eigenpoint ``(d0 l : d1 l : d2 l)`` of a linear form."""
    if l.degree != 1:
        raise ValueError("eigen_line takes a linear form")
    if l.is_zero():
        raise ZeroFormError("the zero form defines no line")
    return ProjectivePoint(tuple(l.coefficient(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))))


def _on_isotropic(P) -> bool:
    return isotropic_conic().evaluate(tuple(P)) == 0


def secant_line(P, Q) -> HomogeneousPoly:
    """The line through ``P`` and ``Q``, first nonzero coefficient 1."""
    P, Q = as_point(P), as_point(Q)
    if P == Q:
        raise EqualPointsError("a secant needs two distinct points")
    return HomogeneousPoly.linear(line_through(P, Q).coords)


def conic_tangent(P, Q, mu) -> HomogeneousPoly:
    """``q + mu*l^2`` with ``l`` the line through ``P`` and ``Q``.

    Every such conic is tangent to ``q`` at both points.
    """
    P, Q = as_point(P), as_point(Q)
    if not (_on_isotropic(P) and _on_isotropic(Q)):
        raise NotOnIsotropicConicError("both points must lie on x0^2+x1^2+x2^2=0")
    l = secant_line(P, Q)
    return isotropic_conic() + (l * l).scale(exact(mu))


def pencil_parameter(c: HomogeneousPoly, P, Q):
    """The ``mu`` with ``c`` proportional to ``q + mu*l^2``, ``l`` the secant through ``P`` and ``Q``.

    Raises :class:`NotTangentFamilyError` when ``c`` is not in the pencil or
    is a multiple of ``l^2`` alone.
    """
    if c.degree != 2:
        raise ValueError("pencil_parameter takes a conic")
    l = secant_line(P, Q)
    q, l2 = isotropic_conic(), l * l
    rows = [[q.coefficient(e), l2.coefficient(e)] for e in monomial_index(2)]
    sol = solve_particular(ExactMatrix.from_rows(rows, 2), [c.coefficient(e) for e in monomial_index(2)])
    if sol is None or sol[0] == 0:
        raise NotTangentFamilyError("the conic is not of the form a*q + b*l^2 with a != 0")
    return exact(sol[1] / sol[0])


def _wedge(c: HomogeneousPoly, i: int, j: int) -> HomogeneousPoly:
    return VARS[i] * c.partial(j) - VARS[j] * c.partial(i)


def lambda_of(c: HomogeneousPoly, l: HomogeneousPoly):
    """The scalar ``lam`` with ``x_i d_j c - x_j d_i c = lam * l * (x_i d_j l - x_j d_i l)``.

    Computed as ``d_i d_j c / (d_i l * d_j l)`` over the index pairs where the
    denominator is nonzero; when there is none, ``lam`` is solved for
    directly.  The identity is then checked for all three pairs.
    """
    if c.degree != 2 or l.degree != 1:
        raise ValueError("lambda_of takes a conic and a line")
    dl = [l.partial(i).coefficient((0, 0, 0)) for i in range(3)]
    candidates = set()
    for i, j in ((0, 1), (0, 2), (1, 2)):
        den = dl[i] * dl[j]
        if den:
            candidates.add(exact(c.partial(i).partial(j).coefficient((0, 0, 0)) / den))
    if len(candidates) > 1:
        raise NotTangentFamilyError(f"ratios disagree: {sorted(map(str, candidates))}")
    if candidates:
        lam = candidates.pop()
    else:
        lam = _solve_lambda(c, l)
    for i, j in _PAIRS:
        if _wedge(c, i, j) != (l * _wedge(l, i, j)).scale(lam):
            raise NotTangentFamilyError("the conic is not tangent to q along this line")
    return lam


def _solve_lambda(c: HomogeneousPoly, l: HomogeneousPoly):
    idx = monomial_index(2)
    rows, rhs = [], []
    for i, j in _PAIRS:
        lhs = _wedge(c, i, j)
        rhs_form = l * _wedge(l, i, j)
        for e, k in idx.items():
            rows.append([rhs_form.coefficient(e)])
            rhs.append(lhs.coefficient(e))
    sol = solve_particular(ExactMatrix.from_rows(rows, 1), rhs)
    if sol is None:
        raise NotTangentFamilyError("no scalar satisfies the tangency identity")
    return sol[0]


@dataclass
class TangentConicFamily:
    P: ProjectivePoint
    Q: ProjectivePoint
    l: HomogeneousPoly
    conics: list
    lambdas: list

    @classmethod
    def from_mus(cls, P, Q, mus: Sequence) -> "TangentConicFamily":
        P, Q = as_point(P), as_point(Q)
        conics = [conic_tangent(P, Q, mu) for mu in mus]
        l = secant_line(P, Q)
        return cls(P, Q, l, conics, [lambda_of(c, l) for c in conics])

    def form(self, with_line: bool = False) -> HomogeneousPoly:
        f = self.l if with_line else HomogeneousPoly.constant(1)
        for c in self.conics:
            f = f * c
        return f

    def to_json(self) -> dict:
        from .algebra import format_scalar

        return {
            "P": self.P.to_json(),
            "Q": self.Q.to_json(),
            "line": self.l.to_string(),
            "conics": [c.to_string() for c in self.conics],
            "lambdas": [format_scalar(x) for x in self.lambdas],
        }


@dataclass
class EigenStructure:
    curve: HomogeneousPoly
    point: ProjectivePoint
    line: Optional[HomogeneousPoly]
    form: HomogeneousPoly

    def to_json(self) -> dict:
        return {
            "form": self.form.to_string(),
            "line": self.line.to_string() if self.line is not None else None,
            "curve": self.curve.to_string(),
            "curve_degree": self.curve.degree,
            "point": self.point.to_json(),
        }


def tangent_family_eigenstructure(
    l: HomogeneousPoly, conics: Sequence[HomogeneousPoly], with_line: bool = False
) -> EigenStructure:
    """Positive-dimensional part and isolated point of ``E(f)`` for a tangent family.

    ``l`` is the common secant line and ``f`` is the product of the conics,
    times ``l`` when ``with_line`` is set.  Without the line factor each
    generator is ``l * D * C'`` with ``D = x_i d_j l - x_j d_i l`` and
    ``C' = sum_u lam_u prod_{v != u} c_v``, so ``E(f)`` is the line, the
    curve ``C'`` and the point ``E(l)``.  With the line factor each generator
    is ``D * (prod c_v + l^2 C')``.  Both factorizations are verified exactly.
    """
    secant = l
    conics = list(conics)
    if not conics:
        raise ValueError("at least one conic is required")
    lams = [lambda_of(c, secant) for c in conics]
    s = len(conics)
    comb = HomogeneousPoly.zero(2 * (s - 1))
    for u in range(s):
        term = HomogeneousPoly.constant(lams[u])
        for v in range(s):
            if v != u:
                term = term * conics[v]
        comb = comb + term
    prod_c = HomogeneousPoly.constant(1)
    for c in conics:
        prod_c = prod_c * c
    if with_line:
        f = secant * prod_c
        curve = prod_c + secant * secant * comb
        outside = HomogeneousPoly.constant(1)
    else:
        f = prod_c
        curve = comb
        outside = secant
    t = generators(f)
    for k, (i, j) in enumerate(_PAIRS):
        if t.f[k] != outside * _wedge(secant, i, j) * curve:
            raise NotTangentFamilyError("generator factorization failed")
    return EigenStructure(
        curve=curve, point=eigen_line(secant), line=None if with_line else secant, form=f
    )


__all__ = [
    "EigenStructure",
    "TangentConicFamily",
    "conic_tangent",
    "eigen_line",
    "fermat",
    "fermat_eigenpoints",
    "lambda_of",
    "pencil_parameter",
    "secant_line",
    "tangent_family_eigenstructure",
]
