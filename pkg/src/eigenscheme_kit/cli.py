"""Command-line frontend.

Every subcommand prints one JSON document carrying a ``schema`` tag, or a
short text rendering with ``--pretty``.  Exit codes: 0 success, 1 checked
negative answer, 2 usage or input error, 3 computational failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from . import constructions, eigen, points, reconstruct, solve
from .algebra import format_scalar, parse_scalar
from .errors import (
    EigenschemeError,
    FloatEntriesError,
    PolySyntaxError,
)
from .poly import HomogeneousPoly, parse_poly

SCHEMA = "eigenscheme-kit/1"

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_FAILURE = 3

# raised by the algorithms themselves rather than by bad input
_COMPUTATIONAL = (
    "BudgetExceededError",
    "CharacterInconsistentError",
    "IdentityViolatedError",
    "InconsistentSystemError",
    "NoConvergenceError",
    "PositiveDimensionalError",
    "RootsNotInFieldError",
    "ZeroTripleError",
    "NotTangentFamilyError",
)


class InputError(Exception):
    """Malformed input, reported with a location when one is known."""


# ---------------------------------------------------------------------------
# input helpers


def _line_col(text: str, pos: int) -> tuple[int, int]:
    before = text[:pos]
    return before.count("\n") + 1, pos - (before.rfind("\n") + 1) + 1


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _load_json(path: str):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _poly_text(text: str, where: str, degree: Optional[int] = None) -> HomogeneousPoly:
    try:
        return parse_poly(text, degree)
    except PolySyntaxError as exc:
        if exc.position is None:
            raise InputError(f"{where}: {exc}") from exc
        line, col = _line_col(text, exc.position)
        raise InputError(f"{where}:{line}:{col}: {exc.message}") from exc


def read_poly(arg: str) -> HomogeneousPoly:
    """A form given inline, or ``@path`` to a JSON or text file."""
    if not arg.startswith("@"):
        return _poly_text(arg, "<argument>")
    path = arg[1:]
    text = _read(path)
    if text.lstrip().startswith(("{", '"')):
        obj = _load_json(path)
        try:
            return HomogeneousPoly.from_json(obj)
        except (KeyError, TypeError) as exc:
            raise InputError(f"{path}: not a polynomial object ({exc})") from exc
    return _poly_text(text.strip(), path)


def read_points(path: str) -> points.PointSet:
    path = path[1:] if path.startswith("@") else path
    data = _load_json(path)
    items = data["points"] if isinstance(data, dict) and "points" in data else data
    if not isinstance(items, list):
        raise InputError(f"{path}: expected a list of points")
    text = _read(path)
    out = []
    for k, item in enumerate(items):
        if not isinstance(item, list) or len(item) != 3:
            raise InputError(f"{path}: point {k} must be a list of three scalars")
        coords = []
        for x in item:
            if isinstance(x, float):
                raise FloatEntriesError(f"{path}: point {k} has a float coordinate; use strings")
            try:
                coords.append(parse_scalar(x) if isinstance(x, str) else x)
            except PolySyntaxError as exc:
                pos = text.find(json.dumps(x))
                if pos >= 0:
                    # skip the opening quote
                    loc = "%d:%d" % _line_col(text, pos + 1 + (exc.position or 0))
                else:
                    loc = f"point {k}"
                raise InputError(f"{path}:{loc}: {exc.message}") from exc
        out.append(coords)
    return points.PointSet(out)


def read_triple(path: str) -> eigen.GeneratorTriple:
    path = path[1:] if path.startswith("@") else path
    obj = _load_json(path)
    if isinstance(obj, list):
        obj = {"triple": obj}
    if not isinstance(obj, dict):
        raise InputError(f"{path}: expected a triple object or a list of three forms")
    raw = obj.get("triple", obj.get("text"))
    if not isinstance(raw, list) or len(raw) != 3:
        raise InputError(f"{path}: a triple has three forms")
    forms = []
    for k, p in enumerate(raw):
        forms.append(_poly_text(p, f"{path}: form {k}") if isinstance(p, str) else HomogeneousPoly.from_json(p))
    return eigen.GeneratorTriple(tuple(forms), eigen.Convention(obj.get("convention", "koszul")))


def read_tensor(args) -> eigen.Tensor:
    if args.form and args.tensor:
        raise InputError("give either -f or -g, not both")
    if args.form:
        return eigen.Tensor.from_form(read_poly(args.form))
    if args.tensor:
        if len(args.tensor) != 3:
            raise InputError("-g must be given exactly three times")
        return eigen.Tensor(tuple(read_poly(g) for g in args.tensor))
    raise InputError("a form (-f) or three components (-g) are required")


def parse_point(text: str, allow_float: bool = False) -> tuple:
    parts = [p for p in text.replace(",", ":").split(":")]
    if len(parts) != 3:
        raise InputError(f"point {text!r} needs three coordinates separated by ':'")
    out = []
    for p in parts:
        try:
            out.append(parse_scalar(p))
        except PolySyntaxError:
            if not allow_float:
                raise
            try:
                out.append(complex(p.strip().replace("i", "j")))
            except ValueError as exc:
                raise InputError(f"bad coordinate {p!r}") from exc
    return tuple(out)


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, payload, text)


def cmd_gen(args):
    T = read_tensor(args)
    t = eigen.generators(T, args.convention)
    text = "\n".join(f"f{k} = {fk.to_string()}" for k, fk in enumerate(t.f))
    return EXIT_OK, {"triple": t.to_json()}, text


def cmd_verify(args):
    t = read_triple(args.triple)
    koszul = eigen.verify_koszul_identity(t)
    symmetric = eigen.verify_symmetric_identities(t)
    residual = eigen.divergence_residual(t)
    payload = {
        "convention": t.convention.value,
        "koszul_identity": koszul,
        "symmetric_identities": symmetric,
        "divergence_residual": residual.to_string(),
    }
    text = f"linear syzygy: {'ok' if koszul else 'FAILS'}\nsymmetric identities: {'ok' if symmetric else 'FAIL'}"
    return (EXIT_OK if koszul else EXIT_NEGATIVE), payload, text


def _report_text(r: reconstruct.RecognitionReport) -> str:
    lines = [f"eigenscheme: {'yes' if r.is_eigenscheme else 'no'}"]
    if not r.is_eigenscheme:
        lines.append(f"failed at: {r.failure_stage.value}")
    if r.tensor is not None:
        lines.append("tensor: " + ", ".join(g.to_string() for g in r.tensor.g))
    if r.symmetric_f is not None:
        lines.append(f"f = {r.symmetric_f.to_string()}  (kernel dim {r.kernel_dim})")
    if r.detail:
        lines.append(r.detail)
    return "\n".join(lines)


def cmd_recognize(args):
    Z = read_points(args.points)
    if args.symmetric:
        r = reconstruct.recognize_symmetric(Z, args.degree)
    else:
        r = reconstruct.recognize_partially_symmetric(Z, args.degree)
    return (EXIT_OK if r.is_eigenscheme else EXIT_NEGATIVE), {"report": r.to_json()}, _report_text(r)


def cmd_reconstruct(args):
    t = read_triple(args.triple)
    if not eigen.verify_koszul_identity(t):
        return EXIT_NEGATIVE, {"tensor": None, "detail": "the linear syzygy fails"}, "not a Laguerre triple"
    out = reconstruct.reconstruct_from_triple(t)
    f = out["symmetric_f"]
    payload = {
        "tensor": [g.to_string() for g in out["tensor"].g],
        "symmetric_f": f.to_string() if f is not None else None,
        "kernel_dim": out["kernel_dim"],
    }
    text = "tensor: " + ", ".join(payload["tensor"])
    if f is not None:
        text += f"\nf = {payload['symmetric_f']}"
    return EXIT_OK, payload, text


def cmd_character(args):
    Z = read_points(args.points)
    chi = points.character(Z)
    degree = points.character_degree(chi)
    connected = points.is_connected(chi)
    payload = {
        "character": list(chi.n),
        "connected": connected,
        "degree": degree,
        "degree_matches": degree == len(Z),
        "hilbert_function": points.hilbert_function(Z),
    }
    text = f"character {chi.n}, {'connected' if connected else 'not connected'}, degree {degree} for {len(Z)} points"
    return EXIT_OK, payload, text


def cmd_preconditions(args):
    Z = read_points(args.points)
    rep = points.eigenscheme_preconditions(Z, args.degree, cap=args.cap, threads=args.threads)
    flags = ", ".join(f"cond{k}={'pass' if c.passed else 'FAIL'}" for k, c in enumerate((rep.cond1, rep.cond2, rep.cond3), 1))
    return (EXIT_OK if rep.all_pass else EXIT_NEGATIVE), {"report": rep.to_json()}, flags


def cmd_jacobian(args):
    T = read_tensor(args)
    J = eigen.jacobian_determinant(eigen.generators(T))
    return EXIT_OK, {"jacobian": J.to_string(), "degree": J.degree}, J.to_string()


def cmd_fiber(args):
    T = read_tensor(args)
    Q = parse_point(args.at, allow_float=True)
    res = solve.laguerre_fiber(T, Q, tol=args.tol)
    if res.is_contracted:
        text = "the polar line of the target is contracted"
    else:
        text = "\n".join(_complex_point(p.coords) + f"  dist {p.residual:.2e}" for p in res.points)
    return EXIT_OK, {"fiber": res.to_json()}, text


def _complex_point(c) -> str:
    def fmt(z):
        re_ = z.real if abs(z.real) > 1e-14 else 0.0
        im_ = z.imag if abs(z.imag) > 1e-14 else 0.0
        return f"{re_:.10g}" if im_ == 0 else f"{re_:.10g}{im_:+.10g}i"

    return "(" + " : ".join(fmt(z) for z in c) + ")"


def _solve_one(T, tol, seed):
    pts = solve.eigenpoints_numeric(T, tol=tol, seed=seed)
    return {
        "count": sum(p.multiplicity for p in pts),
        "expected": eigen.expected_count(2, T.d),
        "points": [p.to_json() for p in pts],
    }, pts


def cmd_solve(args):
    if args.batch:
        forms = _load_json(args.batch)
        if not isinstance(forms, list):
            raise InputError(f"{args.batch}: expected a list of forms")
        tensors = [eigen.Tensor.from_form(read_poly(p) if isinstance(p, str) else HomogeneousPoly.from_json(p)) for p in forms]
        with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
            results = list(pool.map(lambda T: _solve_one(T, args.tol, args.seed)[0], tensors))
        text = "\n".join(f"{k}: {r['count']} of {r['expected']}" for k, r in enumerate(results))
        return EXIT_OK, {"results": results}, text
    T = read_tensor(args)
    payload, pts = _solve_one(T, args.tol, args.seed)
    if args.lines:
        payload["contracted_lines"] = [L.to_json() for L in solve.contracted_lines(T, pts, seed=args.seed)]
    text = "\n".join(
        f"{_complex_point(p.coords)}  x{p.multiplicity}  {p.klass.value if p.klass else '?'}" for p in pts
    )
    return EXIT_OK, payload, text


def cmd_fermat(args):
    f = constructions.fermat(args.degree)
    payload = {"form": f.to_string()}
    text = f.to_string()
    if args.points:
        Z = constructions.fermat_eigenpoints(args.degree)
        payload["points"] = Z.to_json()
        text += "\n" + "\n".join(f"p{k} = {P}" for k, P in enumerate(Z))
    return EXIT_OK, payload, text


def cmd_tangent(args):
    P = parse_point(args.P)
    Q = parse_point(args.Q)
    mus = [parse_scalar(m) for m in args.mu]
    fam = constructions.TangentConicFamily.from_mus(P, Q, mus)
    es = constructions.tangent_family_eigenstructure(fam.l, fam.conics, args.with_line)
    payload = {"family": fam.to_json(), "eigenstructure": es.to_json()}
    text = "\n".join(
        [f"line {fam.l.to_string()}"]
        + [f"c{k} = {c.to_string()}  lambda {format_scalar(lam)}" for k, (c, lam) in enumerate(zip(fam.conics, fam.lambdas))]
        + [f"isolated point {es.point}", f"curve of degree {es.curve.degree}"]
    )
    return EXIT_OK, payload, text


def cmd_hilbert(args):
    T = read_tensor(args)
    d = T.d
    t = eigen.generators(T)
    actual = eigen.hilbert_function_of_triple(t, 2 * d)
    numerator = eigen.expected_hilbert_numerator(d)
    expected = eigen.expand_over_cube(numerator, 2 * d)
    match = actual == expected
    payload = {
        "hilbert_function": actual,
        "expected": expected,
        "numerator": [list(p) for p in numerator],
        "matches": match,
        "stable_value": actual[-1] if actual[-1] == actual[-2] else None,
    }
    text = f"HF  {actual}\nexp {expected}\n{'match' if match else 'MISMATCH'}"
    return (EXIT_OK if match else EXIT_NEGATIVE), payload, text


# ---------------------------------------------------------------------------
# parser


def _add_tensor_args(p):
    p.add_argument("-f", "--form", help="form (inline text or @file)")
    p.add_argument("-g", "--tensor", action="append", help="tensor component; give three times")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eigenscheme-kit", description="Eigenschemes of ternary tensors.")
    parser.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generator triple of a tensor")
    _add_tensor_args(p)
    p.add_argument("--convention", choices=[c.value for c in eigen.Convention], default="koszul")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("verify", help="check the identities of a generator triple")
    p.add_argument("-t", "--triple", required=True)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("recognize", help="decide whether points form an eigenscheme")
    p.add_argument("--points", required=True)
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--symmetric", action="store_true")
    p.set_defaults(run=cmd_recognize)

    p = sub.add_parser("reconstruct", help="tensor and form from a generator triple")
    p.add_argument("-t", "--triple", required=True)
    p.set_defaults(run=cmd_reconstruct)

    p = sub.add_parser("character", help="numerical character of a point set")
    p.add_argument("--points", required=True)
    p.set_defaults(run=cmd_character)

    p = sub.add_parser("preconditions", help="check the eigenscheme conditions on points")
    p.add_argument("--points", required=True)
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--cap", type=int, default=points.DEFAULT_SUBSET_CAP, help="subset search budget")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(run=cmd_preconditions)

    p = sub.add_parser("jacobian", help="Jacobian determinant of the generators")
    _add_tensor_args(p)
    p.set_defaults(run=cmd_jacobian)

    p = sub.add_parser("fiber", help="fiber of the Laguerre map over a point")
    _add_tensor_args(p)
    p.add_argument("--at", required=True, help="target point a:b:c")
    p.add_argument("--tol", type=float, default=solve.DEFAULT_TOL)
    p.set_defaults(run=cmd_fiber)

    p = sub.add_parser("solve", help="numerical eigenpoints")
    _add_tensor_args(p)
    p.add_argument("--batch", help="JSON list of forms to solve")
    p.add_argument("--tol", type=float, default=solve.DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--lines", action="store_true", help="also report contracted lines")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("fermat", help="Fermat form and its exact eigenpoints")
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--points", action="store_true")
    p.set_defaults(run=cmd_fermat)

    p = sub.add_parser("tangent", help="conics tangent to the isotropic conic at two points")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--mu", action="append", required=True, help="one per conic; write --mu=-i for negatives")
    p.add_argument("--with-line", action="store_true")
    p.set_defaults(run=cmd_tangent)

    p = sub.add_parser("hilbert", help="Hilbert function of the generators against the expected series")
    _add_tensor_args(p)
    p.set_defaults(run=cmd_hilbert)
    return parser


def _emit(payload: dict, pretty_text: Optional[str], pretty: bool, stream) -> None:
    if pretty and pretty_text is not None:
        print(pretty_text, file=stream)
    else:
        print(json.dumps(payload, indent=None if not pretty else 2), file=stream)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    base = {"schema": SCHEMA, "command": args.command}
    try:
        code, payload, text = args.run(args)
    except InputError as exc:
        _emit({**base, "error": "InputError", "message": str(exc)}, f"error: {exc}", args.pretty, sys.stderr)
        return EXIT_USAGE
    except EigenschemeError as exc:
        name = type(exc).__name__
        code = EXIT_FAILURE if name in _COMPUTATIONAL else EXIT_USAGE
        _emit({**base, "error": name, "message": str(exc)}, f"error: {name}: {exc}", args.pretty, sys.stderr)
        return code
    except ValueError as exc:
        _emit({**base, "error": "ValueError", "message": str(exc)}, f"error: {exc}", args.pretty, sys.stderr)
        return EXIT_USAGE
    _emit({**base, "exit_code": code, **payload}, text, args.pretty, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
