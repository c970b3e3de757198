"""Exact scalars and dense exact linear algebra.

Rational numbers are plain :class:`fractions.Fraction` (or ``int``); the
Gaussian rationals Q(i) are :class:`GaussianRational`.  Any arithmetic
result whose imaginary part vanishes collapses back to ``Fraction`` so
rational computations never pay for the complex layer.  Python ``complex``
is the floating point variant and may not be mixed with the exact ones.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import FieldMismatchError, FloatEntriesError, PolySyntaxError

QQ = "QQ"
QQI = "QQ(i)"
CC = "CC"


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with reduced rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, (float, complex)) or isinstance(im, (float, complex)):
            raise FieldMismatchError("Gaussian rationals take exact parts only")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other.re, other.im
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        if isinstance(other, (float, complex)):
            raise FieldMismatchError("cannot mix an exact Gaussian rational with a float")
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return gaussian(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, d = o
        n = c * c + d * d
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        a, b = self.re, self.im
        return gaussian((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        result = Fraction(1)
        base = self
        while k:
            if k & 1:
                result = base * result
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __abs__(self):
        return abs(complex(self))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return False
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return gaussian(self.re, -self.im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, GaussianRational, complex]

I = GaussianRational(0, 1)


def gaussian(re, im):
    """Build an element of Q(i), collapsing to ``Fraction`` when real."""
    if im == 0:
        return Fraction(re)
    return GaussianRational(re, im)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


def field_of(x) -> str:
    if isinstance(x, (int, Fraction)):
        return QQ
    if isinstance(x, GaussianRational):
        return QQI
    if isinstance(x, (float, complex)):
        return CC
    raise TypeError(f"not a scalar: {x!r}")


def join_fields(a: str, b: str) -> str:
    """Smallest field containing both; exact and float fields never join."""
    if a == b:
        return a
    if CC in (a, b):
        raise FieldMismatchError(f"cannot combine {a} with {b}")
    return QQI


def exact(x):
    """Normalize an exact scalar (int -> Fraction, real Gaussian -> Fraction)."""
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, GaussianRational):
        return gaussian(x.re, x.im)
    raise FloatEntriesError(f"expected an exact scalar, got {x!r}")


def to_complex(x) -> complex:
    if isinstance(x, GaussianRational):
        return complex(x)
    return complex(x)


def conj(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    if isinstance(x, complex):
        return x.conjugate()
    return x


def _format_rational(q: Fraction) -> str:
    return str(q)


def format_scalar(x) -> str:
    """Render a scalar in the shared text grammar (``a/b+c/d*i``)."""
    if isinstance(x, complex):
        return repr(x)
    if isinstance(x, (int, Fraction)):
        return _format_rational(Fraction(x))
    re_, im_ = x.re, x.im
    if im_ == 1:
        imag = "i"
    elif im_ == -1:
        imag = "-i"
    else:
        imag = f"{_format_rational(im_)}*i"
    if re_ == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{_format_rational(re_)}{sign}{imag}"


_SCALAR_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?i)?")


def parse_scalar(text: str):
    """Parse ``a``, ``a/b``, ``a/b+c/d*i``, ``i``, ``-i`` (whitespace ignored).

    Decimal points are rejected: every scalar read from text is exact.
    """
    s = "".join(str(text).split())
    if not s:
        raise PolySyntaxError("empty scalar", 0)
    if "." in s or "e" in s.lower():
        raise PolySyntaxError(f"floating point scalar {text!r} is not exact", s.find("."))
    pos = 0
    re_part = Fraction(0)
    im_part = Fraction(0)
    first = True
    while pos < len(s):
        m = _SCALAR_TERM.match(s, pos)
        sign, num, unit = m.group(1), m.group(2), m.group(3)
        if m.end() == pos or (not num and not unit) or (not first and not sign):
            raise PolySyntaxError(f"malformed scalar {text!r}", pos)
        if num:
            p, _, qd = num.partition("/")
            if qd and int(qd) == 0:
                raise PolySyntaxError("zero denominator", pos)
            value = Fraction(int(p), int(qd) if qd else 1)
        else:
            value = Fraction(1)
        if sign == "-":
            value = -value
        if unit:
            im_part += value
        else:
            re_part += value
        pos = m.end()
        first = False
    return gaussian(re_part, im_part)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class ExactMatrix:
    """Dense rectangular matrix with exact entries, stored row-major."""

    rows: tuple
    cols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], cols: Optional[int] = None) -> "ExactMatrix":
        rows = tuple(tuple(_exact_entry(x) for x in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls.from_rows([[0] * c for _ in range(r)], c)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            tuple(tuple(r[j] for r in self.rows) for j in range(self.cols)), self.nrows
        )

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows)) if other.rows else [()] * other.cols
            return ExactMatrix(
                tuple(tuple(_dot(r, c) for c in cols) for r in self.rows), other.cols
            )
        v = list(other)
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(_dot(r, v) for r in self.rows)


def _dot(a, b):
    s = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            s = s + x * y
    return s


def _exact_entry(x):
    if isinstance(x, (float, complex)):
        raise FloatEntriesError(f"floating point entry {x!r} in an exact matrix")
    return exact(x)


def _as_rows(m) -> tuple[list[list], int]:
    if isinstance(m, ExactMatrix):
        rows = [list(r) for r in m.rows]
        cols = m.cols
    else:
        rows = [list(r) for r in m]
        cols = len(rows[0]) if rows else 0
    for r in rows:
        for x in r:
            if isinstance(x, (float, complex)):
                raise FloatEntriesError(f"floating point entry {x!r} in an exact matrix")
    return rows, cols


def _all_rational(rows) -> bool:
    return all(isinstance(x, (int, Fraction)) for r in rows for x in r)


def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in r])
    return out


def _primitive(row):
    g = math.gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def _rref_integer(rows, ncols):
    R = _integer_rows(rows)
    n = len(R)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        prow = R[r] = _primitive(R[r])
        p = prow[c]
        for i in range(n):
            if i != r:
                a = R[i][c]
                if a:
                    g = math.gcd(p, a)
                    mp, ma = p // g, a // g
                    R[i] = _primitive([mp * x - ma * y for x, y in zip(R[i], prow)])
        pivots.append(c)
        r += 1
    out = []
    for i in range(n):
        if i < r:
            p = R[i][pivots[i]]
            out.append([Fraction(x, p) for x in R[i]])
        else:
            out.append([Fraction(0)] * ncols)
    return out, pivots


def _rref_field(rows, ncols):
    R = [[exact(x) for x in row] for row in rows]
    n = len(R)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        p = R[r][c]
        if p != 1:
            R[r] = [x / p if x else x for x in R[r]]
        prow = R[r]
        for i in range(n):
            if i != r:
                a = R[i][c]
                if a:
                    R[i] = [x - a * y if y else x for x, y in zip(R[i], prow)]
        pivots.append(c)
        r += 1
    return R, pivots


def _rref_lists(rows, ncols):
    if not rows:
        return [], []
    if _all_rational(rows):
        return _rref_integer(rows, ncols)
    return _rref_field(rows, ncols)


def rref(m) -> tuple[ExactMatrix, list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns the reduced matrix and its strictly increasing pivot columns.
    """
    rows, cols = _as_rows(m)
    if isinstance(m, ExactMatrix):
        cols = m.cols
    R, piv = _rref_lists(rows, cols)
    return ExactMatrix(tuple(tuple(r) for r in R), cols), piv


def rank(m) -> int:
    rows, cols = _as_rows(m)
    if isinstance(m, ExactMatrix):
        cols = m.cols
    if not rows:
        return 0
    if _all_rational(rows):
        return _rank_integer(_integer_rows(rows), cols)
    return len(_rref_field(rows, cols)[1])


def _rank_integer(R, ncols):
    # forward elimination only, gcd-normalized rows
    R = [r for r in R if any(r)]
    n = len(R)
    r = 0
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        prow = R[r]
        p = prow[c]
        for i in range(r + 1, n):
            a = R[i][c]
            if a:
                g = math.gcd(p, a)
                mp, ma = p // g, a // g
                R[i] = _primitive([mp * x - ma * y for x, y in zip(R[i], prow)])
        r += 1
    return r


def nullspace_basis(m, cols: Optional[int] = None) -> list[tuple]:
    """Basis of ``{v : m v = 0}``, one vector per free column, in column order.

    Each vector is scaled so its first nonzero entry is 1.
    """
    rows, c = _as_rows(m)
    if isinstance(m, ExactMatrix):
        c = m.cols
    if cols is not None:
        c = cols
    R, piv = _rref_lists(rows, c)
    pivset = set(piv)
    basis = []
    for j in range(c):
        if j in pivset:
            continue
        v = [Fraction(0)] * c
        v[j] = Fraction(1)
        for i, pc in enumerate(piv):
            if R[i][j]:
                v[pc] = -R[i][j]
        lead = next(x for x in v if x)
        if lead != 1:
            v = [x / lead if x else x for x in v]
        basis.append(tuple(exact(x) for x in v))
    return basis


def solve_particular(m, b: Sequence) -> Optional[tuple]:
    """Some x with ``m x = b`` (free variables zero), or ``None`` if inconsistent."""
    rows, cols = _as_rows(m)
    if isinstance(m, ExactMatrix):
        cols = m.cols
    b = [_exact_entry(x) for x in b]
    if len(b) != len(rows):
        raise ValueError("right-hand side length does not match row count")
    aug = [r + [bi] for r, bi in zip(rows, b)]
    R, piv = _rref_lists(aug, cols + 1)
    if piv and piv[-1] == cols:
        return None
    x = [Fraction(0)] * cols
    for i, pc in enumerate(piv):
        x[pc] = R[i][cols]
    return tuple(exact(v) for v in x)


def determinant(m):
    """Exact determinant of a square matrix (Bareiss on integers)."""
    rows, cols = _as_rows(m)
    n = len(rows)
    if n != cols and n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    if _all_rational(rows):
        dens = []
        R = []
        for r in rows:
            den = 1
            for x in r:
                if isinstance(x, Fraction):
                    den = den * x.denominator // math.gcd(den, x.denominator)
            dens.append(den)
            R.append([int(x * den) for x in r])
        scale = math.prod(dens)
        return Fraction(_bareiss(R), scale)
    R = [[exact(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if R[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            R[c], R[piv] = R[piv], R[c]
            det = -det
        p = R[c][c]
        det = det * p
        for i in range(c + 1, n):
            a = R[i][c]
            if a:
                f = a / p
                R[i] = [x - f * y for x, y in zip(R[i], R[c])]
    return exact(det)


def _bareiss(M):
    n = len(M)
    M = [r[:] for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pk
    return sign * M[n - 1][n - 1]
