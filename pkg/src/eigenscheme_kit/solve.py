"""Numerical eigenpoints, Laguerre fibers and contracted lines.

Eigenpoints are found by elimination: two random combinations of the
generators are put in general position by a random integer change of
coordinates, their exact resultant is computed, its roots are found with the
Aberth-Ehrlich iteration, and each root is lifted back to the plane and
refined by Gauss-Newton on all three generators.  Multiplicities come from
an exact square-free decomposition of the resultant; they are intersection
multiplicities of the two combinations, so they are only a heuristic for the
scheme structure at non-reduced points.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2
import numpy as np

from .algebra import (
    ExactMatrix,
    GaussianRational,
    determinant,
    exact,
    gaussian,
    is_exact,
    nullspace_basis,
)
from .eigen import GeneratorTriple, as_tensor, expected_count, generators
from .errors import (
    FloatEntriesError,
    NoConvergenceError,
    PositiveDimensionalError,
    ZeroInputError,
    ZeroVectorError,
)
from .poly import BinaryForm, HomogeneousPoly, isotropic_conic

DEFAULT_TOL = 1e-9
MAX_ABERTH_ITER = 1000


class Klass(str, enum.Enum):
    REGULAR = "Regular"
    IRREGULAR = "Irregular"
    UNDETERMINED = "Undetermined"


@dataclass
class NumericPoint:
    coords: tuple
    residual: float = 0.0
    multiplicity: int = 1
    klass: Optional[Klass] = None
    exact: Optional[tuple] = None

    def __post_init__(self):
        self.coords = normalize_numeric(self.coords)

    def to_json(self) -> dict:
        out = {
            "coords": [[z.real, z.imag] for z in self.coords],
            "residual": self.residual,
            "multiplicity": self.multiplicity,
            "class": self.klass.value if self.klass else None,
        }
        if self.exact is not None:
            from .algebra import format_scalar

            out["exact"] = [format_scalar(x) for x in self.exact]
        return out

    @classmethod
    def from_json(cls, obj) -> "NumericPoint":
        from .algebra import parse_scalar

        ex = tuple(parse_scalar(x) for x in obj["exact"]) if obj.get("exact") else None
        return cls(
            tuple(complex(a, b) for a, b in obj["coords"]),
            float(obj.get("residual", 0.0)),
            int(obj.get("multiplicity", 1)),
            Klass(obj["class"]) if obj.get("class") else None,
            ex,
        )


def normalize_numeric(P) -> tuple:
    """Scale so the coordinate of largest modulus is exactly 1."""
    v = np.asarray([complex(x) for x in P], dtype=complex)
    k = int(np.argmax(np.abs(v)))
    if abs(v[k]) == 0:
        raise ZeroVectorError("the zero vector is not a projective point")
    v = v / v[k]
    v[k] = 1.0
    return tuple(complex(z) for z in v)


def projective_distance(u, v) -> float:
    """``|u x v| / (|u| |v|)``; zero iff the points coincide."""
    u = np.asarray([complex(x) for x in u])
    v = np.asarray([complex(x) for x in v])
    return float(np.linalg.norm(np.cross(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v)))


# ---------------------------------------------------------------------------
# fast complex evaluation


class _NumPoly:
    __slots__ = ("exps", "coefs", "degree")

    def __init__(self, p: HomogeneousPoly):
        self.degree = p.degree
        items = list(p.terms.items())
        self.exps = np.array([e for e, _ in items], dtype=int).reshape(-1, 3)
        self.coefs = np.array([complex(c) for _, c in items], dtype=complex)

    def __call__(self, P) -> complex:
        if not len(self.coefs):
            return 0j
        P = np.asarray(P, dtype=complex)
        return complex(np.sum(self.coefs * np.prod(P ** self.exps, axis=1)))

    def partial(self, P, i: int) -> complex:
        if not len(self.coefs):
            return 0j
        P = np.asarray(P, dtype=complex)
        e = self.exps.copy()
        k = e[:, i].astype(complex)
        e[:, i] = np.maximum(e[:, i] - 1, 0)
        return complex(np.sum(self.coefs * k * np.prod(P ** e, axis=1)))


# ---------------------------------------------------------------------------
# resultants


def _exact_coefficient_matrix(p: HomogeneousPoly, var: int):
    """Coefficients of ``p`` as a polynomial in ``x_var``, each a binary form dict."""
    out = [dict() for _ in range(p.degree + 1)]
    others = [k for k in range(3) if k != var]
    for e, c in p.terms.items():
        out[e[var]][(e[others[0]], e[others[1]])] = c
    return out


def _sylvester_at(cp, cq, m, n, u, v):
    def val(form):
        return sum((c * u**a * v**b for (a, b), c in form.items()), Fraction(0))

    a = [val(cp[k]) for k in range(m, -1, -1)]  # highest power first
    b = [val(cq[k]) for k in range(n, -1, -1)]
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - n - 1 - i))
    return determinant(ExactMatrix.from_rows(rows, size))


def _interpolate(xs, ys):
    """Coefficients (low to high) of the polynomial through ``(xs, ys)``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        new = [Fraction(0)] * n
        for i in range(n - 1):
            new[i + 1] += poly[i]
            new[i] -= poly[i] * xs[k]
        new[0] += coef[k]
        poly = new
    return [exact(c) for c in poly]


def sylvester_resultant(p: HomogeneousPoly, q: HomogeneousPoly, eliminate: int = 2) -> BinaryForm:
    """Homogeneous resultant of ``p`` and ``q`` with respect to ``x_eliminate``.

    The result is a binary form of degree ``deg p * deg q`` in the remaining
    two variables (in increasing index order); it vanishes identically iff
    ``p`` and ``q`` share a factor.
    """
    if p.is_zero() or q.is_zero():
        raise ZeroInputError("the resultant needs nonzero forms")
    if not (p.is_exact and q.is_exact):
        raise FloatEntriesError("resultants are computed exactly")
    m, n = p.degree, q.degree
    if m == 0 or n == 0:
        # Res(c, q) = c^deg q, a form of degree 0
        c = p.coefficient((0, 0, 0)) if m == 0 else q.coefficient((0, 0, 0))
        return BinaryForm([exact(c ** (n if m == 0 else m))])
    cp = _exact_coefficient_matrix(p, eliminate)
    cq = _exact_coefficient_matrix(q, eliminate)
    N = m * n
    ts = [Fraction(t) for t in range(N + 1)]
    ys = [_sylvester_at(cp, cq, m, n, 1, t) for t in ts]
    coeffs = _interpolate(ts, ys)
    # R(1, t) = sum c_k t^k, i.e. the coefficient of u^(N-k) v^k
    return BinaryForm(coeffs)


# ---------------------------------------------------------------------------
# univariate roots


def _ptrim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _pderiv(p):
    return [p[k] * k for k in range(1, len(p))]


def _pdivmod(a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        s = a[-1] / lead
        k = len(a) - len(b)
        q[k] = s
        for i, c in enumerate(b):
            a[k + i] = a[k + i] - s * c
        a = _ptrim(a[:-1])
    return _ptrim([exact(c) for c in q]), [exact(c) for c in a]


def _pmonic(p):
    lead = p[-1]
    return [exact(c / lead) for c in p]


def _pgcd(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _pmonic(a)


_PRIME = 2**64 - 59  # prime, 1 mod 4, so -1 has a square root


def _sqrt_minus_one(p: int) -> int:
    for a in range(2, 200):
        r = pow(a, (p - 1) // 4, p)
        if r * r % p == p - 1:
            return r
    raise ArithmeticError("no square root of -1 found")


_I_MOD = _sqrt_minus_one(_PRIME)


def _reduce_mod(x, p: int) -> Optional[int]:
    def frac(q: Fraction):
        if q.denominator % p == 0:
            return None
        return q.numerator * pow(q.denominator, -1, p) % p

    if isinstance(x, Fraction) or isinstance(x, int):
        return frac(Fraction(x))
    re, im = frac(x.re), frac(x.im)
    if re is None or im is None:
        return None
    return (re + im * _I_MOD) % p


def _gcd_degree_mod(a: list, b: list, p: int) -> int:
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            s = a[-1] * inv % p
            k = len(a) - len(b)
            for i, c in enumerate(b):
                a[k + i] = (a[k + i] - s * c) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def is_square_free(p) -> bool:
    """Sufficient test: ``gcd(p, p')`` is constant modulo a large prime.

    A ``False`` answer only means the test was inconclusive.
    """
    p = _ptrim(list(p))
    n = len(p) - 1
    if n < 1:
        return True
    if n % _PRIME == 0:
        return False
    red = [_reduce_mod(c, _PRIME) for c in p]
    if any(c is None for c in red) or red[-1] == 0:
        return False
    dred = [c * k % _PRIME for k, c in enumerate(red)][1:]
    return _gcd_degree_mod(red, dred, _PRIME) == 0


def square_free_decomposition(p) -> list[tuple[list, int]]:
    """Yun's algorithm over an exact field: ``p = c * prod a_k^k``."""
    p = _pmonic(_ptrim([exact(c) for c in p]))
    if len(p) <= 1:
        return []
    if is_square_free(p):
        return [(p, 1)]
    dp = _pderiv(p)
    a0 = _pgcd(p, dp)
    b = _pdivmod(p, a0)[0]
    c = _pdivmod(dp, a0)[0]
    d = [exact(x - y) for x, y in _zip_pad(c, _pderiv(b))]
    out = []
    k = 1
    while len(_ptrim(b)) > 1:
        a = _pgcd(b, d)
        b = _pdivmod(b, a)[0]
        c = _pdivmod(d, a)[0]
        if len(a) > 1:
            out.append((a, k))
        d = [exact(x - y) for x, y in _zip_pad(c, _pderiv(b))]
        k += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return zip(a, b)


def aberth_roots(
    coeffs, seed: int = 0, tol: float = 1e-15, maxiter: int = MAX_ABERTH_ITER, strict: bool = True
) -> np.ndarray:
    """All complex roots of ``sum coeffs[k] z^k`` (low to high), in double precision.

    With ``strict=False`` the current approximations are returned even when
    the iteration stalls, for use as starting values.
    """
    c = np.asarray([complex(x) for x in coeffs], dtype=complex)
    while len(c) and c[-1] == 0:
        c = c[:-1]
    zeros = 0
    while len(c) > 1 and c[0] == 0:
        c = c[1:]
        zeros += 1
    if zeros:
        rest = aberth_roots(c, seed=seed, tol=tol, maxiter=maxiter, strict=strict)
        return np.concatenate([np.zeros(zeros, dtype=complex), rest])
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    if n == 1:
        return np.array([-c[0] / c[1]])
    c = c / c[-1]
    hi = c[::-1]  # highest power first
    dhi = np.polyder(hi)
    rng = np.random.default_rng(seed)
    radius = max(abs(c[0]) ** (1.0 / n), 1e-3)
    bound = 1 + max(abs(c[:-1]))
    radius = min(radius, bound)
    angles = 2 * np.pi * np.arange(n) / n + rng.uniform(0, 2 * np.pi / n) + 0.4
    z = radius * np.exp(1j * angles) * (1 + 0.01 * rng.standard_normal(n))
    best, stall, step = np.inf, 0, np.inf
    for _ in range(maxiter):
        pv = np.polyval(hi, z)
        dv = np.polyval(dhi, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pv / dv
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            inv = 1 / diff
            np.fill_diagonal(inv, 0)
            s = inv.sum(axis=1)
            w = ratio / (1 - ratio * s)
        w = np.where(np.isfinite(w), w, 0)
        z = z - w
        step = float(np.max(np.abs(w) / np.maximum(1, np.abs(z))))
        if step <= tol:
            break
        # rounding noise: stop once the corrections stop shrinking
        if step < best:
            best, stall = step, 0
        elif best < 1e-6:
            stall += 1
            if stall >= 8:
                break
    if strict and step > tol:
        pv = np.abs(np.polyval(hi, z))
        # mixed backward error, so roots at 0 are not judged relatively
        scale = np.polyval(np.abs(hi), np.maximum(np.abs(z), 1))
        if np.any(pv > 1e-8 * scale):
            raise NoConvergenceError("Aberth iteration did not converge")
    # a couple of Newton steps on the original polynomial
    for _ in range(2):
        dv = np.polyval(dhi, z)
        ok = dv != 0
        z = np.where(ok, z - np.polyval(hi, z) / np.where(ok, dv, 1), z)
    return z


def _to_mpc(x):
    if isinstance(x, GaussianRational):
        return gmpy2.mpc(gmpy2.mpfr(gmpy2.mpq(x.re.numerator, x.re.denominator)),
                         gmpy2.mpfr(gmpy2.mpq(x.im.numerator, x.im.denominator)))
    x = Fraction(x)
    return gmpy2.mpc(gmpy2.mpfr(gmpy2.mpq(x.numerator, x.denominator)))


def aberth_refine(coeffs, z0, precision: int = 256, maxiter: int = 200) -> np.ndarray:
    """Aberth-Ehrlich iteration in multiprecision on exact coefficients.

    Starting from approximations ``z0`` (e.g. from :func:`aberth_roots`), the
    roots are refined until the corrections drop below double precision.
    The working precision doubles, up to 4096 bits, if that does not happen.
    """
    while precision <= 4096:
        with gmpy2.context(gmpy2.get_context(), precision=precision):
            c = [_to_mpc(x) for x in coeffs][::-1]  # highest power first
            n = len(c) - 1
            dc = [c[k] * (n - k) for k in range(n)]
            z = [gmpy2.mpc(complex(x)) for x in z0]
            eps = gmpy2.mpfr(2) ** -60
            for _ in range(maxiter):
                biggest = gmpy2.mpfr(0)
                for k in range(n):
                    zk = z[k]
                    pv, dv = c[0], dc[0]
                    for a in c[1:]:
                        pv = pv * zk + a
                    for a in dc[1:]:
                        dv = dv * zk + a
                    if pv == 0:
                        continue
                    ratio = pv / dv
                    s = sum((1 / (zk - z[j]) for j in range(n) if j != k and z[j] != zk), gmpy2.mpc(0))
                    w = ratio / (1 - ratio * s)
                    z[k] = zk - w
                    rel = abs(w) / max(gmpy2.mpfr(1), abs(z[k]))
                    if rel > biggest:
                        biggest = rel
                if biggest < eps:
                    return np.array([complex(x) for x in z])
        precision *= 2
    raise NoConvergenceError("multiprecision Aberth iteration did not converge")


def _to_float_list(p):
    # scale exact coefficients into float range before converting
    big = max(abs(complex(x)) if not isinstance(x, Fraction) else abs(x) for x in p)
    if isinstance(big, Fraction) and big:
        return [complex(x / big if isinstance(x, Fraction) else complex(x) / float(big)) for x in p]
    return [complex(x) for x in p]


def _root_pair(z) -> tuple:
    return normalize_pair((1.0, z))


def normalize_pair(t) -> tuple:
    a, b = complex(t[0]), complex(t[1])
    if abs(a) >= abs(b):
        return (1 + 0j, b / a)
    return (a / b, 1 + 0j)


def univariate_roots(b: BinaryForm, tol: float = 1e-7, seed: int = 0) -> list[tuple[tuple, int]]:
    """Projective roots ``(t0:t1)`` of a binary form with multiplicities.

    Exact forms get exact multiplicities from a square-free decomposition;
    float forms cluster numerical roots lying within ``tol`` of each other.
    """
    if b.is_zero():
        raise ZeroInputError("the zero form has every point as a root")
    c = list(b.coeffs)
    n = len(c) - 1
    out = []
    low = 0
    while c[low] == 0:
        low += 1
    high = n
    while c[high] == 0:
        high -= 1
    if low:
        out.append(((1 + 0j, 0j), low))
    if n - high:
        out.append(((0j, 1 + 0j), n - high))
    core = c[low : high + 1]
    if len(core) <= 1:
        return out
    if b.is_exact:
        for factor, k in square_free_decomposition(core):
            z0 = aberth_roots(_to_float_list(factor), seed=seed, strict=False, maxiter=200)
            if len(factor) > 2:
                z0 = aberth_refine(factor, z0)
            for z in z0:
                out.append((_root_pair(z), k))
        return out
    zs = aberth_roots(core, seed=seed)
    clusters: list[list] = []
    for z in zs:
        for cl in clusters:
            if abs(z - cl[0]) <= tol * max(1, abs(z)):
                cl.append(z)
                break
        else:
            clusters.append([z])
    for cl in clusters:
        out.append((_root_pair(complex(np.mean(cl))), len(cl)))
    return out


# ---------------------------------------------------------------------------
# eigenpoints


def _random_matrix(rng: random.Random):
    while True:
        # entries large enough that the projection center avoids special points
        M = [[rng.randint(-97, 97) for _ in range(3)] for _ in range(3)]
        if determinant(ExactMatrix.from_rows(M)):
            return M


def _random_combination(t: GeneratorTriple, rng: random.Random) -> HomogeneousPoly:
    while True:
        a = [rng.randint(-31, 31) for _ in range(3)]
        p = sum((fi.scale(ai) for fi, ai in zip(t.f, a)), HomogeneousPoly.zero(t.d))
        if not p.is_zero():
            return p


def _gauss_newton(fs: Sequence[_NumPoly], P, iters: int = 30) -> np.ndarray:
    """Refine ``P`` on ``f_i = 0`` in the chart of its largest coordinate."""
    P = np.asarray(normalize_numeric(P), dtype=complex)
    k = int(np.argmax(np.abs(P)))
    free = [i for i in range(3) if i != k]

    def res(Q):
        return np.array([f(Q) for f in fs])

    r = res(P)
    best = np.linalg.norm(r)
    for _ in range(iters):
        J = np.array([[f.partial(P, i) for i in free] for f in fs])
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        Q = P.copy()
        Q[free] += step
        rq = res(Q)
        nq = np.linalg.norm(rq)
        if not np.isfinite(nq) or nq >= best:
            break
        P, r, best = Q, rq, nq
        if best == 0 or np.linalg.norm(step) < 1e-16:
            break
    return P


def _snap(P, triple: GeneratorTriple, limit: int = 10**6) -> Optional[tuple]:
    """An exact point near ``P`` on which the triple vanishes, if one is obvious."""
    if not all(fi.is_exact for fi in triple.f):
        return None
    coords = []
    for z in P:
        re = Fraction(z.real).limit_denominator(limit)
        im = Fraction(z.imag).limit_denominator(limit)
        if abs(complex(float(re), float(im)) - z) > 1e-8:
            return None
        coords.append(gaussian(re, im))
    if all(c == 0 for c in coords):
        return None
    if all(fi.evaluate(coords) == 0 for fi in triple.f):
        return tuple(coords)
    return None


def _classify(g_vals, tol: float) -> Klass:
    m = max(abs(v) for v in g_vals)
    if m < tol:
        return Klass.IRREGULAR
    if m < 10 * tol:
        return Klass.UNDETERMINED
    return Klass.REGULAR


def _solve_attempt(T, triple, rng, tol):
    d = triple.d
    F = _random_combination(triple, rng)
    G = _random_combination(triple, rng)
    M = _random_matrix(rng)
    Fp = F.substitute_linear(M)
    Gp = G.substitute_linear(M)
    if not Fp.coefficient((0, 0, d)) or not Gp.coefficient((0, 0, d)):
        return None
    R = sylvester_resultant(Fp, Gp, eliminate=2)
    if R.is_zero():
        return "zero"
    roots = univariate_roots(R, seed=rng.randint(0, 2**31))
    nGp = _NumPoly(Gp)
    scaleG = max(Gp.max_abs_coefficient(), 1e-300)
    fs = [_NumPoly(fi) for fi in triple.f]
    gs = [_NumPoly(gi) for gi in T.g]
    scale = max(max(fi.max_abs_coefficient() for fi in triple.f), 1.0)
    Mn = np.array(M, dtype=complex)
    found = []
    for (t0, t1), mult in roots:
        line = Fp.to_complex().restrict_to_line((t0, t1, 0), (0, 0, 1))
        # F'(s0*(t0,t1,0) + s1*(0,0,1)); s0 = 0 is excluded since F'(e2) != 0
        ss = aberth_roots(_binary_to_affine(line), seed=1)
        cands = []
        for s in ss:
            y = np.array([t0, t1, s], dtype=complex)
            y = y / np.max(np.abs(y))
            cands.append((abs(nGp(y)) / scaleG, s, y))
        cands.sort(key=lambda c: c[0])
        # another distinct lift with G' ~ 0 means two common zeros on this line
        for c in cands[1:]:
            if c[0] < 1e-9 and abs(c[1] - cands[0][1]) > 1e-4 * max(1, abs(c[1])):
                return None
        x = np.asarray(normalize_numeric(Mn @ cands[0][2]))
        if max(abs(f(x)) for f in fs) > 1e-4 * scale:
            continue  # a common zero of F and G only
        x = _gauss_newton(fs, x)
        x = np.asarray(normalize_numeric(x))
        resid = max(abs(f(x)) for f in fs)
        found.append((x, mult, resid))
    pts = []
    for x, mult, resid in found:
        if resid > 1e-6 * scale:
            continue
        ex = _snap(x, triple)
        if ex is not None:
            x = np.asarray(normalize_numeric(ex))
            resid = 0.0
            gv = [gi.evaluate(ex) for gi in T.g]
            klass = Klass.IRREGULAR if all(v == 0 for v in gv) else Klass.REGULAR
        else:
            klass = _classify([g(x) for g in gs], tol)
        pts.append(NumericPoint(tuple(x), float(resid), mult, klass, ex))
    if sum(p.multiplicity for p in pts) != expected_count(2, d):
        return None
    return pts


def _binary_to_affine(b: BinaryForm):
    # sum c_k s0^(n-k) s1^k at s0 = 1 -> low-to-high in s = s1
    return list(b.coeffs)


def eigenpoints_numeric(T, tol: float = DEFAULT_TOL, seed: int = 0, attempts: int = 4) -> list[NumericPoint]:
    """Eigenpoints of an exact tensor with multiplicities and classification."""
    T = as_tensor(T)
    if not all(gi.is_exact for gi in T.g):
        raise FloatEntriesError("eigenpoints_numeric needs an exact tensor")
    triple = generators(T)
    if triple.is_zero():
        raise PositiveDimensionalError("the generators vanish identically: E(T) is the plane")
    d = triple.d
    if d < 3:
        raise PositiveDimensionalError("tensors of order 2 are matrices; use linear algebra")
    rng = random.Random(seed)
    zero_hits = 0
    for _ in range(attempts):
        out = _solve_attempt(T, triple, rng, tol)
        if out == "zero":
            zero_hits += 1
            if zero_hits >= 3:
                raise PositiveDimensionalError("the eigenscheme has a curve component")
            continue
        if out is not None:
            return sorted(out, key=lambda p: [(-abs(z), z.real, z.imag) for z in p.coords])
    raise NoConvergenceError("could not isolate the eigenpoints in general position")


# ---------------------------------------------------------------------------
# Laguerre map


def laguerre_eval(t: GeneratorTriple, P, tol: float = DEFAULT_TOL) -> Optional[NumericPoint]:
    """Image of ``P`` under ``P -> (f0(P) : f1(P) : f2(P))``, or ``None`` at base points."""
    Pn = normalize_numeric(P)
    vals = [_NumPoly(fi)(Pn) for fi in t.f]
    if max(abs(v) for v in vals) < tol:
        return None
    return NumericPoint(tuple(vals))


@dataclass
class FiberResult:
    kind: str  # "Finite" or "ContractedLine"
    points: list = field(default_factory=list)
    base_points: list = field(default_factory=list)
    line: Optional[tuple] = None

    @property
    def is_contracted(self) -> bool:
        return self.kind == "ContractedLine"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "points": [p.to_json() for p in self.points],
            "base_points": [p.to_json() for p in self.base_points],
            "line": [[complex(z).real, complex(z).imag] for z in self.line] if self.line else None,
        }


def _polar_line_basis(Q):
    """Two points spanning the line ``Q . x = 0``."""
    if all(is_exact(x) for x in Q):
        A, B = nullspace_basis(ExactMatrix.from_rows([list(Q)], 3))
        return A, B, True
    q = np.asarray([complex(x) for x in Q])
    _, _, vh = np.linalg.svd(q.reshape(1, 3))
    return tuple(vh[1].conj()), tuple(vh[2].conj()), False


def laguerre_fiber(T, Q, tol: float = DEFAULT_TOL) -> FiberResult:
    """Points ``P`` with ``P x g(P)`` proportional to ``Q``.

    They lie on the line ``Q . x = 0`` and are the roots there of
    ``sum Q_i g_i``; the line is contracted exactly when that restriction
    vanishes identically.  Base points of the map found among the roots are
    reported separately.
    """
    T = as_tensor(T)
    Q = tuple(Q)
    if all(complex(x) == 0 for x in Q):
        raise ZeroVectorError("the target must be a projective point")
    A, B, exact_line = _polar_line_basis(Q)
    polar = HomogeneousPoly.zero(T.d - 1)
    tensor_exact = all(gi.is_exact for gi in T.g)
    if exact_line and tensor_exact:
        for qi, gi in zip(Q, T.g):
            polar = polar + gi.scale(qi)
        restricted = polar.restrict_to_line(A, B)
        zero = restricted.is_zero()
    else:
        for qi, gi in zip(Q, T.g):
            polar = polar + gi.to_complex().scale(complex(qi))
        restricted = polar.to_complex().restrict_to_line(
            [complex(x) for x in A], [complex(x) for x in B]
        )
        scale = max(polar.max_abs_coefficient(), 1e-300)
        zero = all(abs(complex(c)) < tol * scale for c in restricted.coeffs)
    Qn = normalize_numeric(Q)
    if zero:
        return FiberResult("ContractedLine", line=Qn)
    t = generators(T)
    lam_target = np.asarray(Qn)
    An = np.asarray([complex(x) for x in A])
    Bn = np.asarray([complex(x) for x in B])
    points, base = [], []
    for (s0, s1), mult in univariate_roots(restricted, tol=1e-7):
        P = s0 * An + s1 * Bn
        img = laguerre_eval(t, P, tol)
        if img is None:
            base.append(NumericPoint(tuple(P), 0.0, mult))
            continue
        dist = projective_distance(img.coords, lam_target)
        points.append(NumericPoint(tuple(P), dist, mult))
    return FiberResult("Finite", points=points, base_points=base)


@dataclass(frozen=True)
class NumericLine:
    coeffs: tuple
    indices: tuple

    def to_json(self) -> dict:
        return {"line": [[z.real, z.imag] for z in self.coeffs], "indices": list(self.indices)}


def contracted_lines(T, eigenpoints: Sequence[NumericPoint], tol: float = 1e-8, seed: int = 0) -> list[NumericLine]:
    """Lines through at least ``d`` eigenpoints that the Laguerre map contracts."""
    T = as_tensor(T)
    d = T.d
    t = generators(T)
    pts = [np.asarray(p.coords) for p in eigenpoints]
    n = len(pts)
    rng = np.random.default_rng(seed)
    seen = set()
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in seen:
                continue
            L = np.cross(pts[i], pts[j])
            L = L / np.linalg.norm(L)
            on = tuple(k for k in range(n) if abs(np.dot(L, pts[k])) < tol * 10)
            for a in on:
                for b in on:
                    if a < b:
                        seen.add((a, b))
            if len(on) < d:
                continue
            if _is_contracted(t, pts[i], pts[j], rng, tol):
                out.append(NumericLine(normalize_numeric(L), on))
    return out


def _is_contracted(t, A, B, rng, tol) -> bool:
    images = []
    tries = 0
    while len(images) < 3 and tries < 20:
        tries += 1
        s = complex(rng.standard_normal(), rng.standard_normal())
        img = laguerre_eval(t, A + s * B, tol)
        if img is not None:
            images.append(img.coords)
    if len(images) < 3:
        return False
    return all(projective_distance(images[0], im) < tol for im in images[1:])


def tangency_check(f: HomogeneousPoly, P, tol: float = 1e-8) -> bool:
    """At a regular eigenpoint on ``V(f)``: ``P`` is on ``V(q)`` with the same tangent line."""
    coords = P.coords if isinstance(P, NumericPoint) else normalize_numeric(P)
    if abs(_NumPoly(f)(coords)) >= tol:
        return True
    q_val = _NumPoly(isotropic_conic())(coords)
    grad = [_NumPoly(gi)(coords) for gi in f.gradient()]
    if max(abs(v) for v in grad) == 0:
        return False
    return abs(q_val) < tol and projective_distance(grad, coords) < tol


__all__ = [
    "FiberResult",
    "Klass",
    "NumericLine",
    "NumericPoint",
    "aberth_roots",
    "contracted_lines",
    "eigenpoints_numeric",
    "laguerre_eval",
    "laguerre_fiber",
    "normalize_numeric",
    "projective_distance",
    "square_free_decomposition",
    "sylvester_resultant",
    "tangency_check",
    "univariate_roots",
]
