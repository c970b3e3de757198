"""Determinantal eigenscheme generators of ternary tensors and their invariants.

A partially symmetric tensor is a triple ``(g0, g1, g2)`` of forms of degree
``d-1``; its eigenscheme is cut out by the 2x2 minors of the matrix with rows
``(x0, x1, x2)`` and ``(g0, g1, g2)``.  Two sign conventions for the minors
are in use and are kept apart by :class:`Convention`:

* ``KOSZUL``: ``f0 = x1 g2 - x2 g1``, ``f1 = x2 g0 - x0 g2``, ``f2 = x0 g1 - x1 g0``,
  so that ``x0 f0 + x1 f1 + x2 f2 = 0``;
* ``ALTERNATING``: the same with ``f1`` negated, so that
  ``x0 f0 - x1 f1 + x2 f2 = 0``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .algebra import ExactMatrix, rank, solve_particular
from .errors import DegreeMismatchError, DegreeTooSmallError, ZeroTripleError
from .poly import X0, X1, X2, HomogeneousPoly, dim_forms, monomial_index, monomials

VARS = (X0, X1, X2)


class Convention(str, enum.Enum):
    KOSZUL = "koszul"
    ALTERNATING = "alternating"


@dataclass(frozen=True)
class Tensor:
    """``(g0, g1, g2)`` of common degree ``d-1``, optionally the gradient of ``f``."""

    g: tuple
    symmetric_source: Optional[HomogeneousPoly] = None

    def __post_init__(self):
        if len(self.g) != 3:
            raise ValueError("a ternary tensor has three components")
        degs = {gi.degree for gi in self.g}
        if len(degs) != 1:
            raise DegreeMismatchError(f"tensor components have degrees {sorted(degs)}")
        object.__setattr__(self, "g", tuple(self.g))
        f = self.symmetric_source
        if f is not None:
            if f.degree != self.d or any(f.partial(i) != self.g[i] for i in range(3)):
                raise ValueError("symmetric_source does not match the components")

    @classmethod
    def from_form(cls, f: HomogeneousPoly) -> "Tensor":
        return cls(f.gradient(), symmetric_source=f)

    @property
    def d(self) -> int:
        return self.g[0].degree + 1

    def __iter__(self):
        return iter(self.g)


@dataclass(frozen=True)
class GeneratorTriple:
    f: tuple
    convention: Convention = Convention.KOSZUL

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "convention", Convention(self.convention))
        degs = {fi.degree for fi in self.f}
        if len(self.f) != 3 or len(degs) != 1:
            raise DegreeMismatchError("a generator triple has three forms of one degree")

    @property
    def d(self) -> int:
        return self.f[0].degree

    def to(self, convention) -> "GeneratorTriple":
        convention = Convention(convention)
        if convention == self.convention:
            return self
        f0, f1, f2 = self.f
        return GeneratorTriple((f0, -f1, f2), convention)

    def is_zero(self) -> bool:
        return all(fi.is_zero() for fi in self.f)

    def scale(self, s) -> "GeneratorTriple":
        return GeneratorTriple(tuple(fi.scale(s) for fi in self.f), self.convention)

    def __iter__(self):
        return iter(self.f)

    def to_json(self) -> dict:
        return {
            "convention": self.convention.value,
            "degree": self.d,
            "triple": [fi.to_json() for fi in self.f],
            "text": [fi.to_string() for fi in self.f],
        }

    @classmethod
    def from_json(cls, obj) -> "GeneratorTriple":
        from .poly import coerce_poly

        polys = obj.get("triple", obj.get("text"))
        return cls(tuple(coerce_poly(p) for p in polys), Convention(obj.get("convention", "koszul")))


def as_tensor(T) -> Tensor:
    if isinstance(T, Tensor):
        return T
    if isinstance(T, HomogeneousPoly):
        return Tensor.from_form(T)
    return Tensor(tuple(T))


def generators(T, convention=Convention.KOSZUL) -> GeneratorTriple:
    """The signed 2x2 minors of ``[[x0, x1, x2], [g0, g1, g2]]``."""
    g0, g1, g2 = as_tensor(T).g
    f0 = X1 * g2 - X2 * g1
    f1 = X2 * g0 - X0 * g2
    f2 = X0 * g1 - X1 * g0
    return GeneratorTriple((f0, f1, f2), Convention.KOSZUL).to(convention)


def _linear_syzygy_residual(t: GeneratorTriple) -> HomogeneousPoly:
    f0, f1, f2 = t.f
    if t.convention == Convention.KOSZUL:
        return X0 * f0 + X1 * f1 + X2 * f2
    return X0 * f0 - X1 * f1 + X2 * f2


def verify_koszul_identity(t: GeneratorTriple) -> bool:
    """Whether the linear syzygy of ``t``'s own convention holds exactly."""
    return _linear_syzygy_residual(t).is_zero()


def divergence_residual(t: GeneratorTriple) -> HomogeneousPoly:
    """``d0 f0 - d1 f1 + d2 f2`` of the alternating form of ``t``."""
    f0, f1, f2 = t.to(Convention.ALTERNATING).f
    return f0.partial(0) - f1.partial(1) + f2.partial(2)


def verify_symmetric_identities(t: GeneratorTriple) -> bool:
    """Both identities characterizing the minors of a gradient.

    In the alternating convention these are ``x0 f0 - x1 f1 + x2 f2 = 0`` and
    ``d0 f0 - d1 f1 + d2 f2 = 0``; together they hold exactly when ``t`` is
    the triple of minors of some symmetric tensor.
    """
    alt = t.to(Convention.ALTERNATING)
    return verify_koszul_identity(alt) and divergence_residual(alt).is_zero()


def detect_radial(T) -> Optional[HomogeneousPoly]:
    """The form ``h`` with ``g_i = x_i h`` for all ``i``, if the tensor is radial."""
    T = as_tensor(T)
    d = T.d
    if d < 2:
        return None if any(not gi.is_zero() for gi in T.g) else HomogeneousPoly.zero(0)
    hm = monomials(d - 2)
    gm = monomial_index(d - 1)
    rows = [[0] * len(hm) for _ in range(3 * len(gm))]
    rhs = [0] * (3 * len(gm))
    for i in range(3):
        for k, e in enumerate(hm):
            ne = list(e)
            ne[i] += 1
            rows[i * len(gm) + gm[tuple(ne)]][k] = 1
        for e, c in T.g[i].terms.items():
            rhs[i * len(gm) + gm[e]] = c
    sol = solve_particular(ExactMatrix.from_rows(rows, len(hm)), rhs)
    if sol is None:
        return None
    return HomogeneousPoly.from_vector(d - 2, sol)


def expected_count(n: int, d: int) -> int:
    """Number of eigenpoints, with multiplicity, of a general tensor.

    ``((d-1)^(n+1) - 1) / (d - 2)`` for tensors of order ``d`` on ``C^(n+1)``.
    """
    if d <= 2:
        raise DegreeTooSmallError("the eigenpoint count formula needs d >= 3")
    return ((d - 1) ** (n + 1) - 1) // (d - 2)


def multiplication_matrix(forms, target_degree: int) -> ExactMatrix:
    """Rows are coefficient vectors of ``m * f`` for monomials ``m`` and forms ``f``."""
    idx = monomial_index(target_degree)
    rows = []
    for f in forms:
        shift = target_degree - f.degree
        if shift < 0:
            continue
        for m in monomials(shift):
            row = [0] * len(idx)
            for e, c in f.terms.items():
                row[idx[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]] = c
            rows.append(row)
    return ExactMatrix.from_rows(rows, len(idx))


def hilbert_function_of_triple(t: GeneratorTriple, upto: int) -> list[int]:
    """``dim (S/(f0, f1, f2))_s`` for ``s = 0..upto``."""
    out = []
    forms = [fi for fi in t.f if not fi.is_zero()]
    for s in range(upto + 1):
        m = multiplication_matrix(forms, s)
        out.append(dim_forms(s) - (rank(m) if m.nrows else 0))
    return out


def expected_hilbert_numerator(d: int) -> list[tuple[int, int]]:
    """Sparse ``(exponent, coefficient)`` list of ``1 - 3t^d + t^(d+1) + t^(2d-1)``."""
    if d < 2:
        raise DegreeTooSmallError("the Hilbert series formula needs d >= 2")
    coeffs: dict[int, int] = {}
    for e, c in ((0, 1), (d, -3), (d + 1, 1), (2 * d - 1, 1)):
        coeffs[e] = coeffs.get(e, 0) + c
    return sorted((e, c) for e, c in coeffs.items() if c)


def expand_over_cube(numerator, upto: int) -> list[int]:
    """Coefficients of ``numerator(t) / (1 - t)^3`` through ``t^upto``."""
    out = []
    for s in range(upto + 1):
        out.append(sum(c * (s - e + 1) * (s - e + 2) // 2 for e, c in numerator if e <= s))
    return out


def bateman_generators(g: HomogeneousPoly, f: HomogeneousPoly) -> tuple:
    """2x2 minors of the matrix with rows ``grad g`` and ``grad f`` (conic, cubic).

    Signs follow the Koszul pattern, so ``g = q`` gives twice the minors of ``f``.
    """
    if g.degree != 2 or f.degree != 3:
        raise DegreeMismatchError("Bateman configurations need a conic and a cubic")
    a0, a1, a2 = g.gradient()
    b0, b1, b2 = f.gradient()
    return (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)


def jacobian_determinant(t) -> HomogeneousPoly:
    """Determinant of the 3x3 matrix of partial derivatives ``d_j f_i``."""
    forms = tuple(t.f if isinstance(t, GeneratorTriple) else t)
    if all(fi.is_zero() for fi in forms):
        raise ZeroTripleError("the Jacobian of the zero triple is undefined")
    J = [[fi.partial(j) for j in range(3)] for fi in forms]
    return (
        J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1])
        - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0])
        + J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0])
    )


def radial_shift(T, h: HomogeneousPoly, lam=1) -> Tensor:
    """``(lam*g_i + x_i*h)``; same generators up to the factor ``lam``."""
    T = as_tensor(T)
    return Tensor(tuple(gi.scale(lam) + VARS[i] * h for i, gi in enumerate(T.g)))


def add_tensors(T, S) -> Tensor:
    T, S = as_tensor(T), as_tensor(S)
    return Tensor(tuple(a + b for a, b in zip(T.g, S.g)))


def zero_dimensional_degree(t: GeneratorTriple) -> Optional[int]:
    """Stable value of the triple's Hilbert function, when it stabilizes by ``2d``."""
    d = t.d
    hf = hilbert_function_of_triple(t, 2 * d)
    return hf[-1] if hf[-1] == hf[-2] else None


__all__ = [
    "Convention",
    "GeneratorTriple",
    "Tensor",
    "as_tensor",
    "bateman_generators",
    "detect_radial",
    "divergence_residual",
    "expand_over_cube",
    "expected_count",
    "expected_hilbert_numerator",
    "generators",
    "hilbert_function_of_triple",
    "jacobian_determinant",
    "multiplication_matrix",
    "radial_shift",
    "verify_koszul_identity",
    "verify_symmetric_identities",
]
