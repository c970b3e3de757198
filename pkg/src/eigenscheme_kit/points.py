"""Finite point configurations in the projective plane.

Everything here is exact: points have rational or Gaussian rational
coordinates and ideal data come from ranks of evaluation matrices.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .algebra import (
    ExactMatrix,
    GaussianRational,
    exact,
    format_scalar,
    nullspace_basis,
    parse_scalar,
    rank,
)
from .errors import (
    BudgetExceededError,
    CharacterInconsistentError,
    DuplicatePointsError,
    FloatEntriesError,
    WrongCardinalityError,
    ZeroVectorError,
)
from .poly import X0, X1, X2, HomogeneousPoly, dim_forms, monomials

DEFAULT_SUBSET_CAP = 10**7


def _sort_key(x):
    if isinstance(x, GaussianRational):
        return (x.re, x.im)
    return (x, Fraction(0))


@dataclass(frozen=True)
class ProjectivePoint:
    """A point with exact coordinates scaled so the first nonzero one is 1."""

    coords: tuple

    def __post_init__(self):
        c = []
        for x in self.coords:
            if isinstance(x, (float, complex)):
                raise FloatEntriesError("projective points carry exact coordinates")
            c.append(exact(x))
        if len(c) != 3:
            raise ValueError("a point of the plane has three coordinates")
        lead = next((x for x in c if x != 0), None)
        if lead is None:
            raise ZeroVectorError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", tuple(exact(x / lead) for x in c))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def sort_key(self):
        return tuple(_sort_key(x) for x in self.coords)

    def to_json(self) -> list:
        return [format_scalar(x) for x in self.coords]

    @classmethod
    def parse(cls, item) -> "ProjectivePoint":
        return cls(tuple(parse_scalar(x) if isinstance(x, str) else x for x in item))

    def __str__(self):
        return "(" + ":".join(format_scalar(x) for x in self.coords) + ")"


def as_point(P) -> ProjectivePoint:
    return P if isinstance(P, ProjectivePoint) else ProjectivePoint(tuple(P))


class PointSet:
    """Reduced configuration of distinct points.

    Input order is kept, so indices stay meaningful for callers that label
    points; equality ignores order.
    """

    __slots__ = ("pts",)

    def __init__(self, pts: Iterable):
        pts = tuple(as_point(P) for P in pts)
        if len(set(pts)) != len(pts):
            raise DuplicatePointsError("a point set must not repeat points")
        self.pts = pts

    def __len__(self):
        return len(self.pts)

    def __iter__(self):
        return iter(self.pts)

    def __getitem__(self, i):
        return self.pts[i]

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return set(self.pts) == set(other.pts)

    def __hash__(self):
        return hash(frozenset(self.pts))

    def canonical(self) -> "PointSet":
        return PointSet(sorted(self.pts, key=ProjectivePoint.sort_key))

    def transform(self, M: Sequence[Sequence]) -> "PointSet":
        """Image under ``P -> M P``."""
        return PointSet(
            tuple(sum((M[i][j] * P[j] for j in range(3)), Fraction(0)) for i in range(3))
            for P in self.pts
        )

    def to_json(self) -> list:
        return [P.to_json() for P in self.pts]

    @classmethod
    def from_json(cls, data) -> "PointSet":
        if isinstance(data, dict):
            data = data["points"]
        return cls(ProjectivePoint.parse(item) for item in data)


def as_pointset(Z) -> PointSet:
    return Z if isinstance(Z, PointSet) else PointSet(Z)


def load_points(path: str) -> PointSet:
    with open(path) as fh:
        return PointSet.from_json(json.load(fh))


def save_points(Z, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(as_pointset(Z).to_json(), fh)


# ---------------------------------------------------------------------------
# evaluation matrices and ideals


def _monomial_values(P, k: int) -> list:
    pw = []
    for x in P:
        row = [Fraction(1)]
        for _ in range(k):
            row.append(row[-1] * x)
        pw.append(row)
    return [exact(pw[0][a] * pw[1][b] * pw[2][c]) for a, b, c in monomials(k)]


def eval_matrix(Z, k: int) -> ExactMatrix:
    """Rows are the degree-``k`` monomials evaluated at each point."""
    Z = as_pointset(Z)
    return ExactMatrix.from_rows([_monomial_values(P, k) for P in Z], dim_forms(k))


def ideal_dim(Z, k: int) -> int:
    Z = as_pointset(Z)
    if not len(Z):
        return dim_forms(k)
    return dim_forms(k) - rank(eval_matrix(Z, k))


def ideal_basis(Z, k: int) -> list[HomogeneousPoly]:
    Z = as_pointset(Z)
    if not len(Z):
        vecs = [tuple(int(i == j) for j in range(dim_forms(k))) for i in range(dim_forms(k))]
    else:
        vecs = nullspace_basis(eval_matrix(Z, k))
    return [HomogeneousPoly.from_vector(k, v) for v in vecs]


def hilbert_function(Z) -> list[int]:
    """``HF(s)`` from ``s = 0`` until it reaches ``|Z|``, plus one more degree."""
    Z = as_pointset(Z)
    n = len(Z)
    out = []
    s = 0
    while True:
        out.append(dim_forms(s) - ideal_dim(Z, s))
        if out[-1] == n:
            out.append(n)
            return out
        s += 1


def _stable_degree(hf: list[int]) -> int:
    return len(hf) - 2


def _span_dim(forms, degree: int) -> int:
    if not forms:
        return 0
    return rank(ExactMatrix.from_rows([f.vector() for f in forms], dim_forms(degree)))


def graded_betti(Z) -> tuple[list[int], list[int]]:
    """Degrees of minimal generators and of their syzygies for ``I_Z``.

    Generators are counted directly; syzygy degrees then follow from the
    Hilbert series, since the resolution of points in the plane has length one.
    """
    Z = as_pointset(Z)
    if not len(Z):
        raise ValueError("the ideal of the empty set is the unit ideal")
    hf = hilbert_function(Z)
    top = _stable_degree(hf) + 1
    betas: list[int] = []
    prev: list[HomogeneousPoly] = []
    for s in range(1, top + 1):
        basis = ideal_basis(Z, s)
        products = [v * f for f in prev for v in (X0, X1, X2)]
        extra = len(basis) - _span_dim(products, s)
        betas.extend([s] * extra)
        prev = basis
    # (1-t)^3 * sum HF(s) t^s, with HF constant past the list
    n = len(Z)
    upto = top + 3
    H = [hf[s] if s < len(hf) else n for s in range(upto + 1)]
    cube = (1, -3, 3, -1)
    N = [sum(cube[j] * H[s - j] for j in range(4) if s - j >= 0) for s in range(upto + 1)]
    alphas: list[int] = []
    for s in range(upto + 1):
        count = N[s] - (1 if s == 0 else 0) + betas.count(s)
        if count < 0:
            raise CharacterInconsistentError(f"negative syzygy count in degree {s}")
        alphas.extend([s] * count)
    return betas, alphas


# ---------------------------------------------------------------------------
# numerical character


@dataclass(frozen=True)
class NumericalCharacter:
    n: tuple
    d: int = field(init=False)

    def __post_init__(self):
        n = tuple(int(x) for x in self.n)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", len(n))
        if not n:
            raise ValueError("a numerical character is nonempty")
        if any(a < b for a, b in zip(n, n[1:])) or n[-1] < len(n):
            raise ValueError(f"{n} is not a numerical character")

    def to_json(self) -> dict:
        return {"n": list(self.n), "d": self.d}


def character(Z) -> NumericalCharacter:
    """The numerical character, read off from the graded Betti numbers."""
    Z = as_pointset(Z)
    betas, alphas = graded_betti(Z)
    d = min(betas)
    counts = {d: betas.count(d) - 1}
    for s in range(d + 1, max(alphas + betas) + 1):
        counts[s] = betas.count(s) - alphas.count(s) + counts[s - 1]
    if any(c < 0 for c in counts.values()):
        raise CharacterInconsistentError(f"negative multiplicities {counts}")
    n = []
    for s in sorted(counts, reverse=True):
        n.extend([s] * counts[s])
    if len(n) != d:
        raise CharacterInconsistentError(f"character has {len(n)} entries, expected {d}")
    try:
        chi = NumericalCharacter(tuple(n))
    except ValueError as exc:
        raise CharacterInconsistentError(str(exc)) from exc
    if character_degree(chi) != len(Z):
        raise CharacterInconsistentError("character degree differs from the number of points")
    return chi


def character_degree(c: NumericalCharacter) -> int:
    return sum(ni - i for i, ni in enumerate(c.n))


def is_connected(c: NumericalCharacter) -> bool:
    return all(a <= b + 1 for a, b in zip(c.n, c.n[1:]))


def max_character(d: int) -> NumericalCharacter:
    """The lexicographically largest connected character of ``d^2-d+1`` points."""
    return NumericalCharacter(tuple(range(2 * d - 2, d - 1, -1)) + (d,))


# ---------------------------------------------------------------------------
# collinearity and curves through subsets


def _det3(a, b, c):
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def line_through(A, B) -> ProjectivePoint:
    """Coefficients of the line through two distinct points, as a dual point."""
    return ProjectivePoint(
        (A[1] * B[2] - A[2] * B[1], A[2] * B[0] - A[0] * B[2], A[0] * B[1] - A[1] * B[0])
    )


@dataclass(frozen=True)
class Line:
    coeffs: ProjectivePoint
    indices: tuple

    def form(self) -> HomogeneousPoly:
        return HomogeneousPoly.linear(self.coeffs.coords)

    def to_json(self) -> dict:
        return {"line": self.coeffs.to_json(), "text": self.form().to_string(), "indices": list(self.indices)}


def collinear_sets(Z, minimum: int = 3) -> list[Line]:
    """All lines through at least ``minimum`` points, with the point indices on each."""
    Z = as_pointset(Z)
    seen = set()
    out = []
    for i, j in combinations(range(len(Z)), 2):
        if (i, j) in seen:
            continue
        on = tuple(k for k in range(len(Z)) if k in (i, j) or _det3(Z[i], Z[j], Z[k]) == 0)
        for a, b in combinations(on, 2):
            seen.add((a, b))
        if len(on) >= minimum:
            out.append(Line(line_through(Z[i], Z[j]), on))
    return out


def max_collinear(Z) -> tuple[int, list[Line]]:
    Z = as_pointset(Z)
    if len(Z) < 2:
        raise ValueError("collinearity needs at least two points")
    lines = collinear_sets(Z, minimum=2)
    best = max(len(L.indices) for L in lines)
    return best, [L for L in lines if len(L.indices) == best]


class _Echelon:
    """Incremental row echelon form for rank tests along a search path."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[tuple[int, list]] = []

    def reduce(self, v):
        v = list(v)
        for piv, row in self.rows:
            if piv is None:
                continue
            c = v[piv]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def push(self, v) -> bool:
        """Add ``v``; returns whether the rank increased."""
        v = self.reduce(v)
        piv = next((k for k, x in enumerate(v) if x), None)
        if piv is None:
            self.rows.append((None, None))
            return False
        inv = 1 / v[piv]
        self.rows.append((piv, [x * inv for x in v]))
        return True

    def pop(self):
        self.rows.pop()

    @property
    def rank(self) -> int:
        return sum(1 for p, _ in self.rows if p is not None)


def _search(values, m: int, full: int, first: int, cap: list) -> Optional[tuple]:
    n = len(values)
    ech = _Echelon(full)
    chosen = [first]
    ech.push(values[first])

    def rec(start):
        cap[0] -= 1
        if cap[0] < 0:
            raise BudgetExceededError("subset search exceeded its budget")
        if len(chosen) == m:
            return tuple(chosen)
        for k in range(start, n - (m - len(chosen)) + 1):
            ech.push(values[k])
            if ech.rank < full:
                chosen.append(k)
                hit = rec(k + 1)
                chosen.pop()
                if hit:
                    return hit
            ech.pop()
        return None

    if ech.rank >= full:
        return None
    return rec(first + 1)


def points_on_curve_of_degree(
    Z, k: int, m: int, cap: int = DEFAULT_SUBSET_CAP, threads: int = 1
) -> Optional[tuple[tuple, HomogeneousPoly]]:
    """First ``m``-subset (lexicographic order) lying on a curve of degree ``k``.

    Returns the index subset and one such curve, or ``None``.  A branch of the
    search is abandoned as soon as its points impose ``dim S_k`` conditions.
    ``cap`` bounds the number of partial subsets visited.
    """
    Z = as_pointset(Z)
    if k < 1 or m < 1:
        raise ValueError("need k >= 1 and m >= 1")
    n = len(Z)
    if m > n:
        return None
    full = dim_forms(k)
    if m < full:
        # any m < dim S_k points lie on a curve of degree k
        idx = tuple(range(m))
        return idx, _curve_through(Z, idx, k)
    values = [_monomial_values(P, k) for P in Z]
    firsts = list(range(n - m + 1))
    if threads > 1:
        # each branch gets its own budget; the lowest first index wins
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda f: _search(values, m, full, f, [cap]), firsts))
        hit = next((r for r in results if r), None)
    else:
        budget = [cap]
        hit = None
        for f in firsts:
            hit = _search(values, m, full, f, budget)
            if hit:
                break
    if hit is None:
        return None
    return hit, _curve_through(Z, hit, k)


def _curve_through(Z: PointSet, idx, k: int) -> HomogeneousPoly:
    sub = PointSet(Z[i] for i in idx)
    return ideal_basis(sub, k)[0]


# ---------------------------------------------------------------------------
# eigenscheme preconditions


@dataclass
class ConditionResult:
    passed: bool
    detail: dict

    def to_json(self) -> dict:
        return {"pass": self.passed, **self.detail}


@dataclass
class PreconditionReport:
    cond1: ConditionResult
    cond2: ConditionResult
    cond3: ConditionResult

    @property
    def all_pass(self) -> bool:
        return self.cond1.passed and self.cond2.passed and self.cond3.passed

    def to_json(self) -> dict:
        return {
            "all_pass": self.all_pass,
            "cond1": self.cond1.to_json(),
            "cond2": self.cond2.to_json(),
            "cond3": self.cond3.to_json(),
        }


def eigenscheme_preconditions(Z, d: int, cap: int = DEFAULT_SUBSET_CAP, threads: int = 1) -> PreconditionReport:
    """Check the three conditions that make ``Z`` the eigenscheme of a tensor.

    1. ``dim I_Z(d) = 3``;
    2. no ``d+1`` points of ``Z`` on a line;
    3. no ``k*d`` points of ``Z`` on a curve of degree ``k``, ``2 <= k < d``.
    """
    Z = as_pointset(Z)
    expected = d * d - d + 1
    if len(Z) != expected:
        raise WrongCardinalityError(f"expected {expected} points for d={d}, got {len(Z)}")
    dim = ideal_dim(Z, d)
    c1 = ConditionResult(dim == 3, {"dim": dim})
    best, lines = max_collinear(Z)
    c2 = ConditionResult(
        best <= d,
        {"max_collinear": best, "witnesses": [L.to_json() for L in lines] if best > d else []},
    )
    witnesses = []
    for k in range(2, d):
        hit = points_on_curve_of_degree(Z, k, k * d, cap=cap, threads=threads)
        if hit:
            witnesses.append({"k": k, "indices": list(hit[0]), "curve": hit[1].to_string()})
    c3 = ConditionResult(not witnesses, {"witnesses": witnesses})
    return PreconditionReport(c1, c2, c3)


__all__ = [
    "Line",
    "NumericalCharacter",
    "PointSet",
    "PreconditionReport",
    "ProjectivePoint",
    "as_pointset",
    "character",
    "character_degree",
    "collinear_sets",
    "eigenscheme_preconditions",
    "eval_matrix",
    "graded_betti",
    "hilbert_function",
    "ideal_basis",
    "ideal_dim",
    "is_connected",
    "load_points",
    "max_character",
    "max_collinear",
    "points_on_curve_of_degree",
    "save_points",
]
