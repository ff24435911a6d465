"""Command-line entry point.

Exit codes: 0 the verdict was computed (and is positive where that applies),
1 a mathematical negative (no factor, fixture mismatch, no search hits),
2 bad input, 3 a search guard was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import _kernels
from .classify import classify, q_closed
from .errors import (
    CholeskyFailure,
    InvalidSemiring,
    MalformedTable,
    NotEnumerable,
    SearchTooLarge,
    SemiringMismatch,
    ShapeMismatch,
    StronglyInvertibleRequired,
)
from .factorization import cholesky, lu
from .fixtures import verify_all
from .matrix import Matrix, load_matrix, load_vector, vector_names
from .search import parse_predicates, search
from .semiring import Semiring, load
from .solve import solve_lu, solve_spd

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

INPUT_ERRORS = (
    ValueError,
    OSError,
    json.JSONDecodeError,
    MalformedTable,
    InvalidSemiring,
    ShapeMismatch,
    SemiringMismatch,
    NotEnumerable,
)


def _emit(args, payload: dict, table: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(table)


def _grid(rows: list[list[str]]) -> str:
    width = max(len(x) for r in rows for x in r)
    return "\n".join("  [ " + "  ".join(x.rjust(width) for x in r) + " ]" for r in rows)


def _kv(pairs) -> str:
    w = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(w)}  {v}" for k, v in pairs)


# subcommands ---------------------------------------------------------------------


def cmd_semiring(args) -> int:
    if args.action == "check":
        return _semiring_check(args)
    s = load(args.ref)
    if not s.is_finite:
        payload = {
            "uri": s.uri, "finite": False, "zero": "0", "one": "1",
            "units": ["1"], "add_invertible": ["0"], "squares": "perfect squares",
        }
        _emit(args, payload, _kv([(k, v) for k, v in payload.items()]))
        return EXIT_OK
    nm = s.name
    payload = {
        "uri": s.uri,
        "finite": True,
        "order": s.order,
        "zero": nm(s.zero),
        "one": nm(s.one),
        "names": list(s.names),
        "units": {nm(a): nm(s.inverse(a)) for a in s.units},
        "add_invertible": {nm(a): nm(s.neg(a)) for a in s.add_invertible},
        "squares": {nm(a): [nm(r) for r in s.square_roots(a)] for a in s.squares},
        "ring": s.is_ring,
        "antinegative": s.is_antinegative,
        "q_closed": q_closed(s),
    }
    table = _kv([
        ("semiring", s.uri),
        ("order", s.order),
        ("zero / one", f"{payload['zero']} / {payload['one']}"),
        ("U(S)", ", ".join(f"{a}^-1={b}" for a, b in payload["units"].items())),
        ("V(S)", ", ".join(f"-{a}={b}" for a, b in payload["add_invertible"].items())),
        ("Q(S)", ", ".join(f"{a}<-{{{','.join(r)}}}" for a, r in payload["squares"].items())),
        ("ring", s.is_ring),
        ("antinegative", s.is_antinegative),
        ("Q+Q in Q", payload["q_closed"]),
    ])
    _emit(args, payload, table)
    return EXIT_OK


def _semiring_check(args) -> int:
    try:
        s = load(args.ref)
    except InvalidSemiring as exc:
        payload = {"valid": False, "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in exc.violations]}
        _emit(args, payload, "invalid\n" + "\n".join(f"  {v}" for v in exc.violations))
        return EXIT_NEGATIVE
    _emit(args, {"valid": True, "uri": s.uri}, f"valid: {s.uri}")
    return EXIT_OK


def _load_pair(args) -> tuple[Semiring, Matrix]:
    s = load(args.semiring)
    return s, load_matrix(args.matrix, s)


def cmd_classify(args) -> int:
    s, m = _load_pair(args)
    rep = classify(m, nnr_bound=args.nnr_bound)
    payload = rep.to_json(s)
    nnr = payload["nnr"]
    nnr_txt = nnr["status"] + (f" (x={nnr['witness']}, x^T M x={nnr['value']})" if "witness" in nnr else "")
    psd = payload["psd"]
    psd_txt = psd["status"] + (f" (B columns {psd['B_columns']})" if "B_columns" in psd else "")
    table = _grid(m.names()) + "\n" + _kv([
        ("symmetric", rep.symmetric),
        ("invertible", rep.invertible),
        ("strongly invertible", rep.strongly_invertible if rep.failing_k is None else f"False (k={rep.failing_k})"),
        ("nonneg numerical range", nnr_txt),
        ("positive semidefinite", psd_txt),
        ("Q+Q in Q", rep.q_closed_semiring),
    ])
    _emit(args, payload, table)
    return EXIT_OK


def cmd_cholesky(args) -> int:
    s, m = _load_pair(args)
    res = cholesky(m, verify=args.verify)
    payload = res.to_json(s)
    if res.ok:
        table = "L =\n" + _grid(res.factor.names()) + f"\npivots: {payload['pivots']}\nverified: {res.verified_hypotheses}"
    else:
        table = f"no factor: {res.describe()}"
    _emit(args, payload, table)
    return EXIT_OK if res.ok else EXIT_NEGATIVE


def cmd_lu(args) -> int:
    s, m = _load_pair(args)
    try:
        lower, upper = lu(m)
    except StronglyInvertibleRequired as exc:
        _emit(args, {"status": "NotStronglyInvertible", "k": exc.k}, f"no LU factorization: {exc}")
        return EXIT_NEGATIVE
    payload = {"status": "Success", "L": lower.names(), "U": upper.names()}
    _emit(args, payload, "L =\n" + _grid(lower.names()) + "\nU =\n" + _grid(upper.names()))
    return EXIT_OK


def cmd_solve(args) -> int:
    s, m = _load_pair(args)
    c = load_vector(args.vector, s)
    try:
        y = solve_spd(m, c) if args.method == "cholesky" else solve_lu(m, c)
    except CholeskyFailure as exc:
        _emit(args, {"status": exc.result.status, "solution": None, "residual_verified": False}, str(exc))
        return EXIT_NEGATIVE
    except StronglyInvertibleRequired as exc:
        _emit(args, {"status": "NotStronglyInvertible", "solution": None, "residual_verified": False}, str(exc))
        return EXIT_NEGATIVE
    names = vector_names(s, y)
    verified = m.matvec(y) == tuple(c)
    _emit(args, {"status": "Success", "solution": names, "residual_verified": verified},
          f"y = ({', '.join(names)})\nresidual verified: {verified}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    results = verify_all(z6=args.z6)
    passed = sum(r.passed for r in results)
    if args.format == "json":
        print(json.dumps({"passed": passed, "total": len(results), "fixtures": [r.to_json() for r in results]}, sort_keys=True))
    else:
        for r in results:
            print(f"{r.name} {'PASS' if r.passed else 'FAIL'}  {r.description}")
            if r.error:
                print(f"    error: {r.error}")
            for label, exp, got in r.checks:
                if exp != got:
                    print(f"    {label}: expected {exp!r}, got {got!r}")
        print(f"{passed}/{len(results)} fixtures pass")
    return EXIT_OK if passed == len(results) else EXIT_NEGATIVE


def cmd_search(args) -> int:
    s = load(args.semiring)
    literals = parse_predicates(args.predicates)
    hits = 0
    for m in search(s, args.n, literals, limit=args.limit):
        hits += 1
        if args.format == "json":
            print(json.dumps(m.to_json(), sort_keys=True), flush=True)
        else:
            print(_grid(m.names()) + "\n", flush=True)
    if args.format != "json":
        print(f"{hits} match(es)")
    return EXIT_OK if hits else EXIT_NEGATIVE


# parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semichol", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({_kernels.backend()} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=("json", "table"), default="table")
        sp.add_argument("--json", dest="format", action="store_const", const="json", help="shorthand for --format json")

    sp = sub.add_parser("semiring", help="validate or describe a semiring")
    sp.add_argument("action", choices=("check", "info"))
    sp.add_argument("ref", help="builder uri (zn:6, bool, product:zn:2,bool, z2x3, chain:2, nat) or JSON file")
    fmt(sp)
    sp.set_defaults(func=cmd_semiring)

    for name, func, helptext in (
        ("classify", cmd_classify, "symmetry, (strong) invertibility, numerical range, semidefiniteness"),
        ("cholesky", cmd_cholesky, "Cholesky factor by repeated Schur complements"),
        ("lu", cmd_lu, "LU factorization of a strongly invertible matrix"),
        ("solve", cmd_solve, "solve M y = c"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("semiring")
        sp.add_argument("matrix", help="matrix JSON file or inline JSON")
        if name == "solve":
            sp.add_argument("vector", help="vector JSON file or inline JSON")
            sp.add_argument("--method", choices=("cholesky", "lu"), default="cholesky")
        if name == "classify":
            sp.add_argument("--nnr-bound", type=int, default=3, help="entry bound for the naturals (default 3)")
        if name == "cholesky":
            sp.add_argument("--verify", choices=("local", "theorem"), default="local")
        fmt(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("verify-paper", help="reproduce the five reference fixtures")
    sp.add_argument("--z6", default="zn:6", help=argparse.SUPPRESS)
    fmt(sp)
    sp.set_defaults(func=cmd_verify_paper)

    sp = sub.add_parser("search", help="stream symmetric matrices matching a predicate conjunction")
    sp.add_argument("semiring")
    sp.add_argument("n", type=int)
    sp.add_argument("predicates", help="e.g. 'strongly-invertible & nnr & !cholesky'")
    sp.add_argument("--limit", type=int, default=None)
    fmt(sp)
    sp.set_defaults(func=cmd_search)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except SearchTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
