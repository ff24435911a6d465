"""Reference examples reproduced exactly by ``semichol verify-paper``.

F1  Z_6, [[5,2],[2,1]]: strongly invertible and semidefinite, but its first
    pivot 5 is not a square so no Cholesky factor exists.
F2  Z_2 x B, [[(1,0),(0,1)],[(0,1),(1,0)]]: an involution with full square
    set, not strongly invertible, not semidefinite, no triangular factor.
F3  Z_2[x]/(x^3), diag(1, 1+x^2): factors are exactly L D over the diagonal
    involutions, and none of them has a nonnegative numerical range.
F4  N, the 2x2 identity: semidefinite, yet x = (1,1) gives the non-square 2.
F5  the three-way characterization holds at n = 2 over B, Z_2, Z_2[x]/(x^3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .classify import NO, YES, corollary_equivalence_check, has_nonneg_numerical_range, is_positive_semidefinite, q_closed
from .factorization import PIVOT_NOT_SQUARE, all_cholesky_factors, cholesky, diagonal_involutions
from .matrix import Matrix, strong_invertibility
from .semiring import Semiring, from_uri, load


@dataclass
class FixtureResult:
    name: str
    description: str
    checks: list[tuple[str, object, object]] = field(default_factory=list)
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(exp == got for _, exp, got in self.checks)

    def expect(self, label: str, expected, actual) -> None:
        self.checks.append((label, expected, actual))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "passed": self.passed,
            "error": self.error,
            "checks": [
                {"check": label, "expected": _plain(exp), "actual": _plain(got), "ok": exp == got}
                for label, exp, got in self.checks
            ],
        }


def _plain(v):
    if isinstance(v, (set, frozenset)):
        return sorted(_plain(x) for x in v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, Matrix):
        return v.names()
    return v


def f1(z6: Semiring) -> FixtureResult:
    r = FixtureResult("F1", "Z6 [[5,2],[2,1]]: strongly invertible, PSD, no Cholesky")
    m = Matrix(z6, [[5, 2], [2, 1]])
    r.expect("strongly invertible", None, strong_invertibility(m))
    r.expect("psd", YES, is_positive_semidefinite(m).status)
    res = cholesky(m)
    r.expect("cholesky status", PIVOT_NOT_SQUARE, res.status)
    r.expect("failing pivot", (0, 5), (res.step, res.pivot))
    r.expect("lower-triangular factors", 0, len(all_cholesky_factors(m)))
    return r


def f2(s: Semiring) -> FixtureResult:
    r = FixtureResult("F2", "Z2xB involution: invertible, not strongly invertible, NNR, not PSD, no factor")
    m = Matrix.parse(s, [["(1,0)", "(0,1)"], ["(0,1)", "(1,0)"]])
    r.expect("M^2 = I", True, m @ m == Matrix.identity(s, 2))
    r.expect("invertible", True, m.is_invertible())
    r.expect("first failing k", 1, strong_invertibility(m))
    r.expect("Q(S) = S", True, len(s.squares) == s.order)
    r.expect("nnr", YES, has_nonneg_numerical_range(m).status)
    r.expect("psd", NO, is_positive_semidefinite(m).status)
    r.expect("lower-triangular factors", 0, len(all_cholesky_factors(m)))
    return r


def f3(s: Semiring) -> FixtureResult:
    r = FixtureResult("F3", "Z2[x]/(x^3) diag(1,1+x^2): factors are L*D, none has NNR")
    r.expect("Q(S)", {"0", "1", "x^2", "1+x^2"}, {s.name(a) for a in s.squares})
    m = Matrix.parse(s, [["1", "0"], ["0", "1+x^2"]])
    res = cholesky(m)
    r.expect("cholesky status", "Success", res.status)
    r.expect("L L^T = M", True, res.ok and res.factor @ res.factor.T == m)
    r.expect("involution entries", {"1", "1+x^2"}, {s.name(d) for d in s.square_roots(s.one)})
    factors = all_cholesky_factors(m)
    orbit = {res.factor @ d for d in diagonal_involutions(s, 2)} if res.ok else set()
    r.expect("factor set = {L D}", True, set(factors) == orbit and len(factors) == len(orbit))
    r.expect("factors with NNR", 0, sum(has_nonneg_numerical_range(f).status == YES for f in factors))
    return r


def f4(nat: Semiring) -> FixtureResult:
    r = FixtureResult("F4", "N identity: PSD but not NNR")
    m = Matrix.identity(nat, 2)
    r.expect("psd", YES, is_positive_semidefinite(m).status)
    v = has_nonneg_numerical_range(m)
    r.expect("nnr", NO, v.status)
    r.expect("counter-witness", ((1, 1), 2), (v.witness, v.value))
    return r


def f5(semirings: list[Semiring]) -> FixtureResult:
    r = FixtureResult("F5", "three-way equivalence at n=2 over B, Z2, Z2[x]/(x^3)")
    for s in semirings:
        r.expect(f"{s.uri} sums of squares are squares", True, q_closed(s))
        rep = corollary_equivalence_check(s, 2)
        r.expect(f"{s.uri} violations", 0, len(rep.violations))
    return r


def _guard(name: str, desc: str, build: Callable[[], FixtureResult]) -> FixtureResult:
    try:
        return build()
    except Exception as exc:  # a broken input makes the fixture fail, not the run
        return FixtureResult(name, desc, error=f"{type(exc).__name__}: {exc}")


def verify_all(z6: str | Semiring = "zn:6") -> list[FixtureResult]:
    """Run the five fixtures; ``z6`` may be replaced to exercise a negative control."""

    def resolve(ref):
        return load(ref) if isinstance(ref, str) else ref

    return [
        _guard("F1", "Z6 fixture", lambda: f1(resolve(z6))),
        _guard("F2", "Z2xB fixture", lambda: f2(from_uri("product:zn:2,bool"))),
        _guard("F3", "Z2[x]/(x^3) fixture", lambda: f3(from_uri("z2x3"))),
        _guard("F4", "naturals fixture", lambda: f4(from_uri("nat"))),
        _guard("F5", "equivalence fixture", lambda: f5([from_uri(u) for u in ("bool", "zn:2", "z2x3")])),
    ]
