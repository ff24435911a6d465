"""Deciders for nonnegative numerical range and positive semidefiniteness.

Verdicts are tri-state (``"yes"``, ``"no"``, ``"unknown"``) and carry a
witness that can be rechecked independently: a vector ``x`` with
``x^T M x`` outside Q(S) for a negative range verdict, and a multiset of
generators ``v`` with ``sum v v^T = M`` for a semidefinite one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import HypothesisNotSatisfied, NotEnumerable, SearchTooLarge, ShapeMismatch
from .factorization import SEARCH_LIMIT, all_cholesky_factors
from .matrix import Matrix, is_strongly_invertible, strong_invertibility
from .semiring import FiniteSemiring, Semiring

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

NAT_NNR_BOUND = 3
# node budget for the exact semidefiniteness search over the naturals
NAT_PSD_BUDGET = 200_000


@dataclass(frozen=True)
class NNRVerdict:
    status: str
    witness: tuple | None = None
    value: object = None
    bound: int | None = None

    def to_json(self, s: Semiring) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = [s.name(v) for v in self.witness]
            out["value"] = s.name(self.value)
        if self.bound is not None:
            out["bound"] = self.bound
        return out


@dataclass(frozen=True)
class GramWitness:
    """Columns ``v`` of ``B`` with multiplicities; ``B B^T`` resums to ``M``."""

    generators: tuple[tuple, ...]
    multiplicities: tuple[int, ...]

    def columns(self) -> list[tuple]:
        return [g for g, c in zip(self.generators, self.multiplicities) for _ in range(c)]

    def matrix_b(self, s: Semiring) -> Matrix:
        cols = self.columns()
        return Matrix(s, np.array(cols, dtype=object).T)

    def resum(self, s: Semiring) -> Matrix:
        b = self.matrix_b(s)
        return b @ b.T


@dataclass(frozen=True)
class PSDVerdict:
    status: str
    witness: GramWitness | None = None

    def to_json(self, s: Semiring) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["B_columns"] = [[s.name(v) for v in col] for col in self.witness.columns()]
        return out


# nonnegative numerical range ---------------------------------------------------


def has_nonneg_numerical_range(m: Matrix, bound: int = NAT_NNR_BOUND) -> NNRVerdict:
    """Is ``x^T M x`` a square for every ``x``?

    Finite semirings are decided exhaustively over S^n and report the first
    counter-witness in canonical order.  Over the naturals only vectors with
    entries ``<= bound`` are tried; finding none gives ``unknown``.
    """
    if not m.is_square:
        raise ShapeMismatch("numerical range needs a square matrix")
    s = m.semiring
    n = m.n
    if s.is_finite:
        xs = K.all_vectors(s.order, n)
        vals = K.quadratic_batch(m.data, xs, s.add_table, s.mul_table, s.zero)
        bad = np.flatnonzero(~s.square_mask[vals])
        if bad.size == 0:
            return NNRVerdict(YES)
        i = bad[0]
        return NNRVerdict(NO, tuple(int(v) for v in xs[i]), int(vals[i]))
    for x in itertools.product(range(bound + 1), repeat=n):
        val = m.quadratic_form(x)
        if not s.is_square(val):
            return NNRVerdict(NO, x, val)
    return NNRVerdict(UNKNOWN, bound=bound)


# positive semidefiniteness -----------------------------------------------------


def _upper_digits(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n)


def _generators(s: FiniteSemiring, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Codes of ``v v^T`` (upper triangle, row-major) for every v in S^n."""
    xs = K.all_vectors(s.order, n)
    r, c = _upper_digits(n)
    outer = s.mul_table[xs[:, r], xs[:, c]]
    return K.encode(outer, s.order), xs


def symmetric_code(m: Matrix) -> int:
    r, c = _upper_digits(m.n)
    return int(K.encode(m.data[r, c].astype(np.int64)[None, :], m.semiring.order)[0])


def symmetric_from_code(s: FiniteSemiring, n: int, code: int) -> Matrix:
    r, c = _upper_digits(n)
    arr = np.zeros((n, n), dtype=np.int64)
    digits = K.decode(np.array([code]), s.order, len(r))[0]
    arr[r, c] = digits
    arr[c, r] = digits
    return Matrix(s, arr)


@dataclass
class _Closure:
    parent: np.ndarray
    via: np.ndarray
    vectors: np.ndarray


def psd_closure(s: FiniteSemiring, n: int, limit: int = SEARCH_LIMIT) -> _Closure:
    """Additive closure of ``{v v^T}`` among symmetric ``n x n`` matrices, memoised per semiring."""
    key = ("psd", n)
    if key in s._memo:
        return s._memo[key]
    width = n * (n + 1) // 2
    size = s.order**width
    if size > limit:
        raise SearchTooLarge(size, limit)
    gens, xs = _generators(s, n)
    parent, via = K.closure_bfs(gens, s.order, width, s.add_table)
    out = _Closure(parent, via, xs)
    s._memo[key] = out
    return out


def _nat_psd(m: Matrix) -> PSDVerdict:
    # every generator v v^T satisfies v_i^2 <= M_ii, and each nonzero one
    # strictly lowers the trace, so the search below is finite
    n = m.n
    target = tuple(tuple(int(v) for v in row) for row in m.data)
    caps = [math.isqrt(target[i][i]) for i in range(n)]
    gens = []
    for v in itertools.product(*(range(c + 1) for c in caps)):
        if any(v) and all(v[i] * v[i] <= target[i][i] for i in range(n)):
            gens.append(v)
    budget = [NAT_PSD_BUDGET]
    failed: set = set()

    def search(residual, start):
        if all(x == 0 for row in residual for x in row):
            return []
        key = (residual, start)
        if key in failed:
            return None
        budget[0] -= 1
        if budget[0] < 0:
            raise _Exhausted
        for gi in range(start, len(gens)):
            v = gens[gi]
            nxt = tuple(tuple(residual[i][j] - v[i] * v[j] for j in range(n)) for i in range(n))
            if any(x < 0 for row in nxt for x in row):
                continue
            found = search(nxt, gi)
            if found is not None:
                return [v] + found
        failed.add(key)
        return None

    try:
        cols = search(target, 0)
    except _Exhausted:
        return PSDVerdict(UNKNOWN)
    if cols is None:
        return PSDVerdict(NO)
    if not cols:
        cols = [tuple(0 for _ in range(n))]
    uniq = sorted(set(cols))
    return PSDVerdict(YES, GramWitness(tuple(uniq), tuple(cols.count(u) for u in uniq)))


class _Exhausted(Exception):
    pass


def is_positive_semidefinite(m: Matrix, limit: int = SEARCH_LIMIT) -> PSDVerdict:
    """Is ``M = B B^T`` for some ``B`` with any number of columns?

    Over a finite semiring the answer is membership of ``M`` in the additive
    closure of the outer products ``v v^T``; the witness is read back from the
    closure's BFS parent pointers.
    """
    if not m.is_square:
        raise ShapeMismatch("semidefiniteness needs a square matrix")
    if not m.is_symmetric():
        return PSDVerdict(NO)
    s = m.semiring
    if not s.is_finite:
        return _nat_psd(m)
    cl = psd_closure(s, m.n, limit)
    code = symmetric_code(m)
    if cl.parent[code] == -2:
        return PSDVerdict(NO)
    used: list[int] = []
    while code >= 0:
        used.append(int(cl.via[code]))
        code = int(cl.parent[code])
    counts: dict[int, int] = {}
    for g in used:
        counts[g] = counts.get(g, 0) + 1
    order = sorted(counts)
    gens = tuple(tuple(int(v) for v in cl.vectors[g]) for g in order)
    return PSDVerdict(YES, GramWitness(gens, tuple(counts[g] for g in order)))


# sums of squares -----------------------------------------------------------------


def q_closed(s: Semiring) -> bool:
    """True iff Q(S) + Q(S) is contained in Q(S)."""
    if not s.is_finite:
        raise NotEnumerable("q-closure needs a finite semiring")
    sq = np.array(s.squares)
    return bool(s.square_mask[s.add_table[sq[:, None], sq[None, :]]].all())


def enumerate_symmetric(s: FiniteSemiring, n: int, limit: int = SEARCH_LIMIT):
    """Yield every symmetric ``n x n`` matrix, ordered by its upper-triangle code."""
    if not s.is_finite:
        raise NotEnumerable("enumeration needs a finite semiring")
    width = n * (n + 1) // 2
    total = s.order**width
    if total > limit:
        raise SearchTooLarge(total, limit)
    for code in range(total):
        yield symmetric_from_code(s, n, code)


@dataclass
class CorollaryReport:
    semiring: str
    n: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def corollary_equivalence_check(s: FiniteSemiring, n: int, limit: int = SEARCH_LIMIT) -> CorollaryReport:
    """Compare three characterizations on every symmetric matrix of size ``n``.

    (1) strongly invertible with nonnegative numerical range, (2) ``L L^T``
    for a strongly invertible lower-triangular ``L``, (3) strongly invertible
    and positive semidefinite.  Requires sums of squares to be squares.
    """
    if not q_closed(s):
        raise HypothesisNotSatisfied(f"Q(S)+Q(S) is not contained in Q(S) for {s.uri}")
    report = CorollaryReport(s.uri, n)
    for m in enumerate_symmetric(s, n, limit):
        si = is_strongly_invertible(m)
        one = si and has_nonneg_numerical_range(m).status == YES
        two = any(is_strongly_invertible(f) for f in all_cholesky_factors(m, limit))
        three = si and is_positive_semidefinite(m, limit).status == YES
        report.checked += 1
        if not one == two == three:
            report.violations.append((m, one, two, three))
    return report


# full report -----------------------------------------------------------------------


@dataclass
class ClassificationReport:
    symmetric: bool
    invertible: bool
    strongly_invertible: bool
    failing_k: int | None
    nnr: NNRVerdict
    psd: PSDVerdict | None
    q_closed_semiring: bool | None

    def to_json(self, s: Semiring) -> dict:
        return {
            "semiring": s.uri,
            "symmetric": self.symmetric,
            "invertible": self.invertible,
            "strongly_invertible": self.strongly_invertible,
            "failing_k": self.failing_k,
            "nnr": self.nnr.to_json(s),
            "psd": self.psd.to_json(s) if self.psd is not None else None,
            "q_closed_semiring": self.q_closed_semiring,
        }


def classify(m: Matrix, nnr_bound: int = NAT_NNR_BOUND, limit: int = SEARCH_LIMIT) -> ClassificationReport:
    if not m.is_square:
        raise ShapeMismatch("classification needs a square matrix")
    s = m.semiring
    failing = strong_invertibility(m)
    return ClassificationReport(
        symmetric=m.is_symmetric(),
        invertible=m.is_invertible(),
        strongly_invertible=failing is None,
        failing_k=failing,
        nnr=has_nonneg_numerical_range(m, nnr_bound),
        psd=is_positive_semidefinite(m, limit) if m.is_symmetric() else PSDVerdict(NO),
        q_closed_semiring=q_closed(s) if s.is_finite else None,
    )


__all__ = [
    "YES",
    "NO",
    "UNKNOWN",
    "NNRVerdict",
    "PSDVerdict",
    "GramWitness",
    "ClassificationReport",
    "CorollaryReport",
    "has_nonneg_numerical_range",
    "is_positive_semidefinite",
    "q_closed",
    "corollary_equivalence_check",
    "enumerate_symmetric",
    "classify",
]
