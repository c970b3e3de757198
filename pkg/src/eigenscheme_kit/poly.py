"""Ternary homogeneous polynomials over Q, Q(i) or the complex floats.

Monomials are exponent triples ``(a, b, c)`` for ``x0^a x1^b x2^c``, ordered
graded-lexicographically with ``x0 > x1 > x2``.  That order is used for
coefficient vectors, matrices and printed output alike.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .algebra import (
    CC,
    GaussianRational,
    exact,
    field_of,
    format_scalar,
    is_exact,
    join_fields,
)
from .errors import (
    DegreeMismatchError,
    EqualPointsError,
    FieldMismatchError,
    InhomogeneousInputError,
    PolySyntaxError,
    ZeroVectorError,
)

Exp = tuple


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple:
    """Exponent triples of degree ``d`` in graded-lex order."""
    if d < 0:
        return ()
    return tuple((a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict:
    return {m: k for k, m in enumerate(monomials(d))}


def dim_forms(d: int) -> int:
    """Dimension of the space of ternary forms of degree ``d``."""
    return (d + 1) * (d + 2) // 2 if d >= 0 else 0


def _norm_coef(c):
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, float):
        return complex(c)
    if isinstance(c, complex):
        return c
    return exact(c)


def _field_of_terms(terms) -> Optional[str]:
    field = None
    for c in terms.values():
        f = field_of(c)
        field = f if field is None else join_fields(field, f)
    return field


class HomogeneousPoly:
    """A homogeneous form in ``x0, x1, x2``; immutable once built."""

    __slots__ = ("degree", "terms", "field")

    def __init__(self, degree: int, terms: Optional[Mapping] = None):
        if degree < 0:
            raise ValueError("negative degree")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise DegreeMismatchError(f"monomial {e} does not have degree {degree}")
            c = _norm_coef(c)
            if c != 0:
                clean[e] = c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "field", _field_of_terms(clean))

    def __setattr__(self, name, value):
        raise AttributeError("HomogeneousPoly is immutable")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPoly":
        return cls(degree, {})

    @classmethod
    def constant(cls, c) -> "HomogeneousPoly":
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def var(cls, i: int) -> "HomogeneousPoly":
        e = [0, 0, 0]
        e[i] = 1
        return cls(1, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "HomogeneousPoly":
        return cls(1, {(1, 0, 0): coeffs[0], (0, 1, 0): coeffs[1], (0, 0, 1): coeffs[2]})

    @classmethod
    def from_vector(cls, degree: int, vec: Sequence) -> "HomogeneousPoly":
        mons = monomials(degree)
        if len(vec) != len(mons):
            raise ValueError("coefficient vector has the wrong length")
        return cls(degree, dict(zip(mons, vec)))

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_exact(self) -> bool:
        return self.field != CC

    def coefficient(self, e) -> object:
        return self.terms.get(tuple(e), Fraction(0))

    def vector(self) -> list:
        zero = 0j if self.field == CC else Fraction(0)
        return [self.terms.get(m, zero) for m in monomials(self.degree)]

    def sorted_terms(self) -> list:
        idx = monomial_index(self.degree)
        return sorted(self.terms.items(), key=lambda t: idx[t[0]])

    def leading_coefficient(self):
        if self.is_zero():
            return Fraction(0)
        return self.sorted_terms()[0][1]

    def monic(self) -> "HomogeneousPoly":
        """Scale so the first coefficient in graded-lex order is 1."""
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coefficient())

    def to_complex(self) -> "HomogeneousPoly":
        return HomogeneousPoly(self.degree, {e: complex(c) for e, c in self.terms.items()})

    def max_abs_coefficient(self) -> float:
        return max((abs(complex(c)) for c in self.terms.values()), default=0.0)

    # -- arithmetic -----------------------------------------------------------

    def _check_field(self, other: "HomogeneousPoly"):
        if self.field and other.field:
            join_fields(self.field, other.field)

    def __add__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatchError(f"cannot add degree {self.degree} and {other.degree}")
        self._check_field(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return HomogeneousPoly(self.degree, terms)

    def __neg__(self):
        return HomogeneousPoly(self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "HomogeneousPoly":
        s = _norm_coef(s)
        if isinstance(s, complex) and self.field not in (None, CC):
            raise FieldMismatchError("cannot scale an exact form by a float")
        if self.field == CC:
            s = complex(s)
        return HomogeneousPoly(self.degree, {e: c * s for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            self._check_field(other)
            terms: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    terms[e] = terms.get(e, 0) + c1 * c2
            return HomogeneousPoly(self.degree + other.degree, terms)
        if isinstance(other, (int, Fraction, GaussianRational, complex, float)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, complex, float)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "HomogeneousPoly":
        if k < 0:
            raise ValueError("negative power")
        result = HomogeneousPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return self.degree == other.degree
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    # -- calculus and evaluation ---------------------------------------------

    def partial(self, i: int) -> "HomogeneousPoly":
        """Derivative with respect to ``x_i``; constants go to the degree-0 zero."""
        if not 0 <= i <= 2:
            raise ValueError("variable index must be 0, 1 or 2")
        if self.degree == 0:
            return HomogeneousPoly.zero(0)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                terms[tuple(ne)] = c * e[i]
        return HomogeneousPoly(self.degree - 1, terms)

    def gradient(self) -> tuple:
        return tuple(self.partial(i) for i in range(3))

    def evaluate(self, point: Sequence):
        """Value at the affine representative ``point`` (not all zero)."""
        P = [_norm_coef(x) for x in point]
        if len(P) != 3:
            raise ValueError("a point needs three coordinates")
        if all(x == 0 for x in P):
            raise ZeroVectorError("the zero vector is not a projective point")
        point_float = any(isinstance(x, complex) for x in P)
        if self.field is not None and point_float != (self.field == CC):
            raise FieldMismatchError("evaluate exact forms at exact points, float forms at float points")
        zero = 0j if point_float else Fraction(0)
        powers = [_powers(x, self.degree, point_float) for x in P]
        total = zero
        for (a, b, c), coef in self.terms.items():
            total = total + coef * powers[0][a] * powers[1][b] * powers[2][c]
        return total if point_float else exact(total)

    def __call__(self, point):
        return self.evaluate(point)

    def restrict_to_line(self, A: Sequence, B: Sequence) -> "BinaryForm":
        """The binary form ``p(t0*A + t1*B)``."""
        A = [_norm_coef(x) for x in A]
        B = [_norm_coef(x) for x in B]
        cross = (A[1] * B[2] - A[2] * B[1], A[2] * B[0] - A[0] * B[2], A[0] * B[1] - A[1] * B[0])
        if all(c == 0 for c in cross):
            raise EqualPointsError("a line needs two distinct points")
        is_float = any(isinstance(x, complex) for x in A + B)
        if self.field is not None and is_float != (self.field == CC):
            raise FieldMismatchError("restrict exact forms along exact lines only")
        n = self.degree
        lin_pows = []
        for i in range(3):
            pw = [[1]]
            base = [A[i], B[i]]
            for _ in range(n):
                pw.append(_conv(pw[-1], base))
            lin_pows.append(pw)
        zero = 0j if is_float else Fraction(0)
        out = [zero] * (n + 1)
        for (a, b, c), coef in self.terms.items():
            prod = _conv(_conv(lin_pows[0][a], lin_pows[1][b]), lin_pows[2][c])
            for k, v in enumerate(prod):
                if v:
                    out[k] = out[k] + coef * v
        return BinaryForm(out)

    def substitute_linear(self, M: Sequence[Sequence]) -> "HomogeneousPoly":
        """The form ``x -> p(M x)``."""
        forms = [HomogeneousPoly.linear(M[i]) for i in range(3)]
        pows = [[HomogeneousPoly.constant(1)] for _ in range(3)]
        for i in range(3):
            for _ in range(self.degree):
                pows[i].append(pows[i][-1] * forms[i])
        result = HomogeneousPoly.zero(self.degree)
        for (a, b, c), coef in self.terms.items():
            result = result + (pows[0][a] * pows[1][b] * pows[2][c]).scale(coef)
        return result

    # -- text -----------------------------------------------------------------

    def to_string(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = _monomial_str(e)
            sign, body = _coef_str(c, bool(mono))
            piece = body + mono
            if not parts:
                parts.append(("-" if sign == "-" else "") + piece)
            else:
                parts.append(sign + piece)
        return "".join(parts)

    __str__ = to_string

    def __repr__(self):
        return f"HomogeneousPoly({self.degree}, {self.to_string()!r})"

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [
                {"exp": list(e), "coef": _json_coef(c)} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "HomogeneousPoly":
        if isinstance(obj, str):
            return parse_poly(obj)
        from .algebra import parse_scalar

        terms = {}
        for t in obj["terms"]:
            c = t["coef"]
            terms[tuple(t["exp"])] = parse_scalar(c) if isinstance(c, str) else _norm_coef(c)
        return cls(int(obj["degree"]), terms)


def _json_coef(c):
    if isinstance(c, complex):
        return [c.real, c.imag]
    return format_scalar(c)


def _powers(x, n, is_float):
    out = [complex(1) if is_float else Fraction(1)]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


def _conv(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def _monomial_str(e) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts)


def _coef_str(c, has_mono: bool) -> tuple:
    star = "*" if has_mono else ""
    if isinstance(c, complex):
        return "+", f"({c!r}){star}"
    if isinstance(c, GaussianRational):
        if c.re == 0:
            sign = "-" if c.im < 0 else "+"
            m = abs(c.im)
            body = "i" if m == 1 else f"{m}*i"
            return sign, body + star
        return "+", f"({format_scalar(c)}){star}"
    sign = "-" if c < 0 else "+"
    m = abs(c)
    if m == 1 and has_mono:
        return sign, ""
    return sign, f"{m}{star}"


X0 = HomogeneousPoly.var(0)
X1 = HomogeneousPoly.var(1)
X2 = HomogeneousPoly.var(2)
VARS = (X0, X1, X2)


def isotropic_conic() -> HomogeneousPoly:
    """The form ``q = x0^2 + x1^2 + x2^2``."""
    return HomogeneousPoly(2, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})


def proportional(p: HomogeneousPoly, q: HomogeneousPoly):
    """The scalar ``s`` with ``p == s*q``, or ``None`` if there is none.

    Two zero forms are proportional with ratio 1; a zero and a nonzero form
    are not.
    """
    if p.degree != q.degree:
        return None
    if p.is_zero() or q.is_zero():
        return Fraction(1) if p.is_zero() and q.is_zero() else None
    if set(p.terms) != set(q.terms):
        return None
    e = q.sorted_terms()[0][0]
    s = p.terms[e] / q.terms[e]
    return s if q.scale(s) == p else None


# ---------------------------------------------------------------------------
# binary forms


class BinaryForm:
    """``sum_k c_k t0^(n-k) t1^k``; coefficients listed for k = 0..n."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        self.coeffs = tuple(_norm_coef(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def evaluate(self, t0, t1):
        n = self.degree
        return sum(c * t0 ** (n - k) * t1 ** k for k, c in enumerate(self.coeffs))

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"BinaryForm({[format_scalar(c) if is_exact(c) else c for c in self.coeffs]})"


# ---------------------------------------------------------------------------
# parsing

_VARS = {"x0": 0, "x1": 1, "x2": 2}


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise PolySyntaxError("floating point coefficients are not exact", j)
            tokens.append(("int", int(text[i:j]), i))
            i = j
        elif ch == "x":
            if i + 1 < n and text[i + 1] in "012":
                tokens.append(("var", int(text[i + 1]), i))
                i += 2
            else:
                raise PolySyntaxError("unknown variable (expected x0, x1 or x2)", i)
        elif ch == "i":
            tokens.append(("imag", None, i))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, None, i))
            i += 1
        else:
            raise PolySyntaxError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    # polynomials are dicts exp -> coef during parsing; homogeneity checked last

    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None, len(self.text))

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise PolySyntaxError(f"expected {kind!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        if not self.toks:
            raise PolySyntaxError("empty polynomial", 0)
        result = self.expr()
        tok = self.peek()
        if tok[0] is not None:
            raise PolySyntaxError(f"unexpected token {tok[0]!r}", tok[2])
        return result

    def expr(self):
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = _pscale(self.term(), sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = _padd(acc, _pscale(t, -1 if op == "-" else 1))
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = _pmul(acc, self.factor())
            elif kind == "/":
                tok = self.take()
                d = self.take("int")
                if d[1] == 0:
                    raise PolySyntaxError("division by zero", tok[2])
                acc = _pscale(acc, Fraction(1, d[1]))
            elif kind in ("int", "var", "imag", "("):
                acc = _pmul(acc, self.factor())
            else:
                return acc

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            k = self.take("int")[1]
            result = {(0, 0, 0): Fraction(1)}
            for _ in range(k):
                result = _pmul(result, base)
            return result
        return base

    def atom(self):
        kind, val, where = self.peek()
        if kind == "int":
            self.take()
            return {(0, 0, 0): Fraction(val)}
        if kind == "imag":
            self.take()
            return {(0, 0, 0): GaussianRational(0, 1)}
        if kind == "var":
            self.take()
            e = [0, 0, 0]
            e[val] = 1
            return {tuple(e): Fraction(1)}
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if kind is None:
            raise PolySyntaxError("unexpected end of input", where)
        raise PolySyntaxError(f"unexpected token {kind!r}", where)


def _padd(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


def _pscale(p, s):
    return {e: c * s for e, c in p.items()} if s != 1 else p


def _pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def parse_poly(text: str, degree: Optional[int] = None) -> HomogeneousPoly:
    """Parse a homogeneous form, e.g. ``"x0^4+x1^4+x2^4"`` or ``"(1-i)*x0^2+2x0*x1"``.

    ``degree`` only matters for the zero polynomial (and is checked otherwise).
    """
    terms = {e: c for e, c in _Parser(text).parse().items() if c != 0}
    degrees = {sum(e) for e in terms}
    if len(degrees) > 1:
        raise InhomogeneousInputError(f"terms of degrees {sorted(degrees)} in {text!r}")
    d = degrees.pop() if degrees else (degree or 0)
    if degree is not None and d != degree:
        raise DegreeMismatchError(f"expected a form of degree {degree}, got {d}")
    return HomogeneousPoly(d, terms)


def coerce_poly(p) -> HomogeneousPoly:
    if isinstance(p, HomogeneousPoly):
        return p
    if isinstance(p, str):
        return parse_poly(p)
    if isinstance(p, Mapping):
        return HomogeneousPoly.from_json(p)
    raise TypeError(f"cannot interpret {p!r} as a polynomial")

