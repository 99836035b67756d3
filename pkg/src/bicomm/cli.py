"""Command line interface.

    bicomm analyze a.json [--field q | --field fp --prime P] [--verify]
    bicomm analyze --random-suite N [--seed S]
    bicomm check-pair pair.json [--witness z.json]
    bicomm solve-sylvester system.json
    bicomm decompose a.json

Reports are JSON with sorted keys, written to stdout or ``--out``.  Errors
are reported as ``{"error": {...}}`` on stdout with exit status 2 (bad
input), 3 (outside the supported regime) or 4 (a mathematical hypothesis
fails).  A failed ``--verify`` self-check or random suite exits with 1.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from typing import List, Optional

from .commalg import (bicommutant_basis, commutant_basis, polynomial_algebra,
                      transpose_bicommutant_check)
from .deriv import (preimage_witness, range_kernel_report, sylvester_solution,
                    sylvester_unique)
from .errors import (AlgebraError, CapabilityError, InputError, NotCoprime,
                     NotInBicommutant, NotSquare, PreconditionError, SizeMismatch,
                     Singular)
from .field import FieldSpec
from .matrix import Mat, mat_inverse, mat_nullspace
from .modstruct import (characteristic_polynomial, minimal_polynomial,
                        primary_decomposition, structure_violations)
from .poly import Poly, poly_eval_matrix, poly_product
from .randgen import random_matrix

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CAPABILITY, EXIT_PRECONDITION = 0, 1, 2, 3, 4


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def input_hash(command: str, spec: FieldSpec, payload) -> str:
    canon = json.dumps({"command": command, "field": spec.to_json(), "input": payload},
                       sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


# -- input handling ---------------------------------------------------------

def field_from_args(args) -> FieldSpec:
    if args.field == "q":
        if args.prime is not None:
            raise InputError("--prime only applies to --field fp")
        return FieldSpec.rationals()
    if args.prime is None:
        raise InputError("--field fp needs --prime")
    return FieldSpec.prime_field(args.prime)


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def parse_matrix(obj, spec: FieldSpec, name: str = "matrix") -> Mat:
    """A matrix object, or a bare list of rows."""
    if isinstance(obj, list):
        cols = len(obj[0]) if obj and isinstance(obj[0], list) else 0
        obj = {"rows": len(obj), "cols": cols, "entries": obj}
    try:
        return Mat.from_json(obj, spec)
    except InputError as exc:
        raise type(exc)(f"{name}: {exc}") from None


def parse_named(obj, spec: FieldSpec, names: List[str]) -> List[Mat]:
    if not isinstance(obj, dict) or not all(n in obj for n in names):
        raise InputError(f"input must be an object with keys {', '.join(names)}")
    return [parse_matrix(obj[n], spec, n) for n in names]


def parse_single(obj, spec: FieldSpec) -> Mat:
    if isinstance(obj, dict) and "a" in obj and "entries" not in obj:
        obj = obj["a"]
    return parse_matrix(obj, spec, "a")


def require_square(a: Mat, name: str = "a"):
    if not a.is_square:
        raise NotSquare(f"{name} must be square, got {a.rows}x{a.cols}")


# -- analyze ----------------------------------------------------------------

def _commutant_formula(factors: List[Poly]) -> int:
    degs = [f.degree for f in factors]
    return sum(min(x, y) for x in degs for y in degs)


def analyze(a: Mat) -> dict:
    require_square(a)
    ms = primary_decomposition(a)
    comm = commutant_basis(a)
    bic = bicommutant_basis(a)
    return {
        "n": a.rows,
        "min_poly": ms.min_poly.to_str(),
        "char_poly": ms.char_poly.to_str(),
        "invariant_factors": [f.to_str() for f in ms.invariant_factors],
        "primary_components": [
            {"prime": c.prime.to_str(), "multiplicity": c.multiplicity, "dimension": c.dimension}
            for c in ms.primary_components],
        "commutant_dim": comm.dim,
        "bicommutant_dim": bic.dim,
        "bicommutant_polynomial_basis": bic == polynomial_algebra(a),
        "transpose_condition_A": transpose_bicommutant_check(a),
    }


def verify_analysis(a: Mat, report: dict) -> List[str]:
    """Re-check the claims of an analysis report with independent computations."""
    spec = a.spec
    bad = []
    mp = Poly.parse(report["min_poly"], spec)
    cp = Poly.parse(report["char_poly"], spec)
    invf = [Poly.parse(s, spec) for s in report["invariant_factors"]]
    if not poly_eval_matrix(mp, a).is_zero():
        bad.append("min_poly does not annihilate a")
    if mp != minimal_polynomial(a):
        bad.append("min_poly differs from the Krylov minimal polynomial")
    if cp != characteristic_polynomial(a):
        bad.append("char_poly differs from the Hessenberg characteristic polynomial")
    if poly_product(invf, spec) != cp:
        bad.append("invariant factors do not multiply to char_poly")
    if invf and invf[-1] != mp:
        bad.append("last invariant factor is not min_poly")
    if report["commutant_dim"] != _commutant_formula(invf):
        bad.append("commutant_dim disagrees with the invariant factor formula")
    n = a.rows
    total = 0
    for comp in report["primary_components"]:
        p = Poly.parse(comp["prime"], spec)
        kernel = mat_nullspace(poly_eval_matrix(p ** comp["multiplicity"], a)).dim
        if kernel != comp["dimension"]:
            bad.append(f"component {comp['prime']} has kernel dimension {kernel}")
        total += comp["dimension"]
    if total != n:
        bad.append("component dimensions do not sum to n")
    if report["bicommutant_polynomial_basis"] and report["bicommutant_dim"] != mp.degree:
        bad.append("bicommutant_dim differs from deg min_poly")
    if not report["bicommutant_polynomial_basis"] or not report["transpose_condition_A"]:
        bad.append("bicommutant property reported false")
    return bad


def random_suite(spec: FieldSpec, count: int, seed: int) -> dict:
    rng = random.Random(seed)
    cases = []
    failures = 0
    for i in range(count):
        n = rng.randint(1, 6)
        a = random_matrix(rng, n, spec)
        report = analyze(a)
        problems = verify_analysis(a, report)
        problems += structure_violations(primary_decomposition(a))
        failures += bool(problems)
        cases.append({"index": i, "n": n, "matrix": a.to_json(),
                      "min_poly": report["min_poly"], "passed": not problems,
                      "problems": problems})
    return {"suite": {"count": count, "seed": seed, "field": spec.to_json(),
                      "failures": failures},
            "cases": cases}


def cmd_analyze(args, spec: FieldSpec):
    if args.random_suite is not None:
        if args.random_suite < 0:
            raise InputError("--random-suite needs a natural number")
        out = random_suite(spec, args.random_suite, args.seed)
        return out, EXIT_OK if out["suite"]["failures"] == 0 else EXIT_VERIFY
    if args.input is None:
        raise InputError("analyze needs an input file or --random-suite")
    a = parse_single(load_json(args.input), spec)
    report = analyze(a)
    report["input_hash"] = input_hash("analyze", spec, a.to_json())
    report["field"] = spec.to_json()
    if args.verify:
        return _with_verify(report, verify_analysis(a, report))
    return report, EXIT_OK


def _with_verify(report: dict, problems: List[str]):
    report["verified"] = not problems
    report["verify_failures"] = problems
    return report, EXIT_OK if not problems else EXIT_VERIFY


# -- check-pair -------------------------------------------------------------

def cmd_check_pair(args, spec: FieldSpec):
    a, b = parse_named(load_json(args.input), spec, ["a", "b"])
    require_square(a, "a")
    if b.shape != a.shape:
        raise SizeMismatch(f"a is {a.rows}x{a.cols} but b is {b.rows}x{b.cols}")
    payload = {"a": a.to_json(), "b": b.to_json()}
    z = None
    if args.witness:
        z = parse_single(load_json(args.witness), spec)
        if z.shape != a.shape:
            raise SizeMismatch(f"witness z is {z.rows}x{z.cols}, expected {a.rows}x{a.cols}")
        payload["z"] = z.to_json()
    rep = range_kernel_report(a, b)
    out = rep.to_json()
    out["agree"] = rep.agree
    out["field"] = spec.to_json()
    out["input_hash"] = input_hash("check-pair", spec, payload)
    x = None
    if z is not None:
        try:
            x = preimage_witness(a, b, z)
        except NotInBicommutant:
            x = None
        out["preimage"] = None if x is None else x.to_json()
    if not args.verify:
        return out, EXIT_OK
    bad = []
    if out["witness"] is not None:
        f = Poly.parse(out["witness"], spec)
        if poly_eval_matrix(f, a) != b:
            bad.append("witness polynomial does not evaluate to b")
    if z is not None and out["preimage"] is not None:
        xx = Mat.from_json(out["preimage"], spec)
        if a @ xx - xx @ a != b @ z - z @ b:
            bad.append("preimage does not satisfy d_a(x) = d_b(z)")
    if not out["agree"]:
        bad.append("the four inclusion tests disagree")
    return _with_verify(out, bad)


# -- solve-sylvester --------------------------------------------------------

def cmd_solve_sylvester(args, spec: FieldSpec):
    c, e, y = parse_named(load_json(args.input), spec, ["c", "e", "y"])
    require_square(c, "c")
    require_square(e, "e")
    if y.shape != (c.rows, e.rows):
        raise SizeMismatch(f"y must be {c.rows}x{e.rows}, got {y.rows}x{y.cols}")
    sol = sylvester_solution(c, e, y)
    x = sol.x
    out = {
        "x": x.to_json(),
        "v": sol.v.to_str(),
        "route": sol.route,
        "residual_zero": (c @ x - x @ e - y).is_zero(),
        "unique": sylvester_unique(c, e),
        "field": spec.to_json(),
        "input_hash": input_hash("solve-sylvester", spec,
                                 {"c": c.to_json(), "e": e.to_json(), "y": y.to_json()}),
    }
    if not args.verify:
        return out, EXIT_OK
    bad = []
    xx = Mat.from_json(out["x"], spec)
    if not (c @ xx - xx @ e - y).is_zero():
        bad.append("residual c x - x e - y is nonzero")
    v = Poly.parse(out["v"], spec)
    left, right = (e, c) if sol.route == "direct" else (c, e)
    if not poly_eval_matrix(v, left).is_zero():
        bad.append("v does not annihilate its operator")
    try:
        mat_inverse(poly_eval_matrix(v, right))
    except Singular:
        bad.append("v is not invertible at the other operator")
    if not out["unique"]:
        bad.append("sylvester operator has a nontrivial kernel")
    return _with_verify(out, bad)


# -- decompose --------------------------------------------------------------

def cmd_decompose(args, spec: FieldSpec):
    a = parse_single(load_json(args.input), spec)
    require_square(a)
    ms = primary_decomposition(a)
    out = {
        "n": a.rows,
        "min_poly": ms.min_poly.to_str(),
        "char_poly": ms.char_poly.to_str(),
        "invariant_factors": [f.to_str() for f in ms.invariant_factors],
        "components": [
            {"prime": c.prime.to_str(), "multiplicity": c.multiplicity,
             "dimension": c.dimension, "projection": c.projection.to_json(),
             "basis": c.basis.basis.to_json()}
            for c in ms.primary_components],
        "field": spec.to_json(),
        "input_hash": input_hash("decompose", spec, a.to_json()),
    }
    if not args.verify:
        return out, EXIT_OK
    n = a.rows
    bad = []
    projs = [Mat.from_json(c["projection"], spec) for c in out["components"]]
    total = Mat.zeros(n, n, spec)
    for i, e in enumerate(projs):
        if e @ e != e:
            bad.append(f"projection {i} is not idempotent")
        if e @ a != a @ e:
            bad.append(f"projection {i} does not commute with a")
        for j, f in enumerate(projs):
            if i != j and not (e @ f).is_zero():
                bad.append(f"projections {i} and {j} are not orthogonal")
        total = total + e
    if total != Mat.identity(n, spec):
        bad.append("projections do not sum to the identity")
    invf = [Poly.parse(s, spec) for s in out["invariant_factors"]]
    if poly_product(invf, spec) != characteristic_polynomial(a):
        bad.append("invariant factors do not multiply to the characteristic polynomial")
    for comp, e in zip(out["components"], projs):
        p = Poly.parse(comp["prime"], spec)
        if not (poly_eval_matrix(p ** comp["multiplicity"], a) @ e).is_zero():
            bad.append(f"component {comp['prime']} is not killed by its prime power")
    bad += structure_violations(ms)
    return _with_verify(out, bad)


# -- entry point ------------------------------------------------------------

COMMANDS = {
    "analyze": cmd_analyze,
    "check-pair": cmd_check_pair,
    "solve-sylvester": cmd_solve_sylvester,
    "decompose": cmd_decompose,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=("q", "fp"), default="q",
                        help="scalar field: rationals (default) or F_p")
    common.add_argument("--prime", type=int, default=None, help="characteristic for --field fp")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--verify", action="store_true",
                        help="re-check the report's claims and exit 1 if any fail")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")

    parser = argparse.ArgumentParser(
        prog="bicomm", description="Commutants, bicommutants and derivations of matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="module structure and bicommutant report")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--random-suite", type=int, default=None, metavar="N",
                   help="analyze N seeded random matrices instead of an input file")
    p = sub.add_parser("check-pair", parents=[common], help="range and kernel inclusions for (a, b)")
    p.add_argument("input")
    p.add_argument("--witness", default=None, metavar="Z",
                   help="matrix z; also report x with d_a(x) = d_b(z)")
    p = sub.add_parser("solve-sylvester", parents=[common], help="solve c x - x e = y")
    p.add_argument("input")
    p = sub.add_parser("decompose", parents=[common], help="primary decomposition of a")
    p.add_argument("input")
    return parser


def error_object(exc: Exception, code: int) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, NotCoprime) and exc.gcd is not None:
        err["gcd"] = exc.gcd.to_str()
    return {"error": err}


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, InputError):
        return EXIT_INPUT
    if isinstance(exc, CapabilityError):
        return EXIT_CAPABILITY
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    return EXIT_INPUT


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = field_from_args(args)
        report, code = COMMANDS[args.command](args, spec)
    except AlgebraError as exc:
        code = exit_code_for(exc)
        sys.stdout.write(dumps(error_object(exc, code)))
        return code
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
