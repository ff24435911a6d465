"""Schur complements of the leading entry, Cholesky and LU factorizations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import (
    NotEnumerable,
    PivotNotInvertible,
    SearchTooLarge,
    ShapeMismatch,
    StronglyInvertibleRequired,
    SubdiagonalNotNegatable,
)
from .matrix import Matrix, strong_invertibility
from .semiring import Semiring

SEARCH_LIMIT = 10**7

SUCCESS = "Success"
NOT_SYMMETRIC = "NotSymmetric"
NOT_STRONGLY_INVERTIBLE = "NotStronglyInvertible"
PIVOT_NOT_SQUARE = "PivotNotSquare"
SUBDIAGONAL_NOT_NEGATABLE = "SubdiagonalNotNegatable"


def _negated(s: Semiring, vec, offset: int = 0) -> list:
    out = []
    for i, v in enumerate(vec):
        nv = s.neg(v)
        if nv is None:
            raise SubdiagonalNotNegatable(offset + i, v)
        out.append(nv)
    return out


def _schur_update(s: Semiring, a_inv, col, row, C: np.ndarray) -> np.ndarray:
    """C + a^{-1} (-col) row^T, entrywise."""
    neg = _negated(s, col)
    out = C.copy()
    for i, nb in enumerate(neg):
        coef = s.mul(a_inv, nb)
        for j, r in enumerate(row):
            out[i, j] = s.add(out[i, j], s.mul(coef, r))
    return out


def schur_complement(m: Matrix) -> Matrix:
    """``M/a = C + a^{-1}(-b) b^T`` for ``M = [[a, b^T], [b, C]]``.

    The row and column of the block view are used separately, so the formula
    also serves non-symmetric inputs (as in LU).
    """
    view = m.block()
    s = m.semiring
    a_inv = s.inverse(view.a)
    if a_inv is None:
        raise PivotNotInvertible(view.a)
    return Matrix(s, _schur_update(s, a_inv, view.col, view.row, view.C.data.copy()))


def _elimination_factor(s: Semiring, a_inv, col, n: int, negate: bool) -> Matrix:
    """``[[1, 0], [a^{-1} col', I]]`` with col' = -col when ``negate``."""
    vals = _negated(s, col) if negate else list(col)
    out = Matrix.identity(s, n).data.astype(object).copy()
    for i, v in enumerate(vals):
        out[i + 1, 0] = s.mul(a_inv, v)
    return Matrix(s, out)


def verify_schur_identity(m: Matrix) -> bool:
    """Check the block identity ``P M P^T = diag(a, M/a)`` and that ``P`` has the expected inverse."""
    s = m.semiring
    view = m.block()
    sc = schur_complement(m)
    a_inv = s.inverse(view.a)
    n = m.n
    p = _elimination_factor(s, a_inv, view.col, n, negate=True)
    p_inv = _elimination_factor(s, a_inv, view.col, n, negate=False)
    diag = np.full((n, n), s.zero, dtype=object)
    diag[0, 0] = view.a
    diag[1:, 1:] = sc.data
    eye = Matrix.identity(s, n)
    return (p @ m @ p.T == Matrix(s, diag)) and (p_inv @ p == eye) and (p @ p_inv == eye)


@dataclass
class CholeskyResult:
    """Outcome of :func:`cholesky`.

    ``step`` is the 0-based elimination step that failed and ``k`` the size of
    the first non-invertible leading principal submatrix, when relevant.
    ``verified_hypotheses`` is ``"theorem"`` only when strong invertibility and
    a nonnegative numerical range were both checked and hold.
    """

    status: str
    factor: Matrix | None = None
    pivots: list = field(default_factory=list)
    step: int | None = None
    pivot: object = None
    k: int | None = None
    verified_hypotheses: str = "local"

    @property
    def ok(self) -> bool:
        return self.status == SUCCESS

    def describe(self) -> str:
        if self.status == PIVOT_NOT_SQUARE:
            return f"{self.status}(step={self.step}, pivot={self.pivot})"
        if self.status == NOT_STRONGLY_INVERTIBLE:
            return f"{self.status}(k={self.k})"
        if self.status == SUBDIAGONAL_NOT_NEGATABLE:
            return f"{self.status}(step={self.step})"
        return self.status

    def to_json(self, s: Semiring) -> dict:
        out = {
            "status": self.status,
            "L": self.factor.names() if self.factor is not None else None,
            "pivots": [s.name(p) for p in self.pivots],
            "verified_hypotheses": self.verified_hypotheses,
        }
        if self.step is not None:
            out["step"] = self.step
        if self.pivot is not None:
            out["pivot"] = s.name(self.pivot)
        if self.k is not None:
            out["k"] = self.k
        return out


def cholesky(m: Matrix, verify: str = "local") -> CholeskyResult:
    """Lower-triangular ``L`` with ``L L^T = M`` by repeated Schur complements.

    Each step takes the leading entry ``a`` of the trailing block, requires it
    to be a unit and a square, picks the preferred root ``k`` and writes the
    column ``[k, k^{-1} b]`` into ``L``.  With ``verify="theorem"`` strong
    invertibility and the nonnegative numerical range are checked first and
    the result records whether both hold.
    """
    if verify not in ("local", "theorem"):
        raise ValueError("verify must be 'local' or 'theorem'")
    if not m.is_square:
        raise ShapeMismatch("cholesky needs a square matrix")
    s = m.semiring
    if not m.is_symmetric():
        return CholeskyResult(NOT_SYMMETRIC)

    level = "local"
    if verify == "theorem":
        from .classify import YES, has_nonneg_numerical_range

        if strong_invertibility(m) is None and has_nonneg_numerical_range(m).status == YES:
            level = "theorem"

    n = m.n
    lower = np.full((n, n), s.zero, dtype=object)
    work = m.data.astype(object).copy()
    pivots = []
    for step in range(n):
        a = work[0, 0]
        a_inv = s.inverse(a)
        if a_inv is None:
            return CholeskyResult(NOT_STRONGLY_INVERTIBLE, pivots=pivots, step=step, pivot=a, k=step + 1, verified_hypotheses=level)
        k = s.preferred_root(a)
        if k is None:
            return CholeskyResult(PIVOT_NOT_SQUARE, pivots=pivots, step=step, pivot=a, verified_hypotheses=level)
        k_inv = s.inverse(k)
        col = list(work[1:, 0])
        lower[step, step] = k
        for i, b in enumerate(col):
            lower[step + 1 + i, step] = s.mul(k_inv, b)
        pivots.append(k)
        if step == n - 1:
            break
        try:
            work = _schur_update(s, a_inv, col, col, work[1:, 1:].copy())
        except SubdiagonalNotNegatable:
            return CholeskyResult(SUBDIAGONAL_NOT_NEGATABLE, pivots=pivots, step=step, verified_hypotheses=level)
    return CholeskyResult(SUCCESS, Matrix(s, lower), pivots, verified_hypotheses=level)


def _lower_from_codes(s: Semiring, codes: np.ndarray, n: int) -> list[Matrix]:
    width = n * (n + 1) // 2
    digits = K.decode(codes, s.order, width)
    rows, cols = np.tril_indices(n)
    out = []
    for d in digits:
        arr = np.zeros((n, n), dtype=np.int64)
        arr[rows, cols] = d
        out.append(Matrix(s, arr))
    return out


def all_cholesky_factors(m: Matrix, limit: int = SEARCH_LIMIT) -> list[Matrix]:
    """Every lower-triangular ``L`` with ``L L^T = M``, in canonical order.

    Candidates are the ``q^(n(n+1)/2)`` lower-triangular matrices, ordered by
    their row-major lower entries with ``L[0,0]`` most significant.
    """
    s = m.semiring
    if not s.is_finite:
        raise NotEnumerable("factor enumeration needs a finite semiring")
    if not m.is_square:
        raise ShapeMismatch("factor enumeration needs a square matrix")
    n = m.n
    total = s.order ** (n * (n + 1) // 2)
    if total > limit:
        raise SearchTooLarge(total, limit)
    if not m.is_symmetric():
        return []
    # np.tril_indices is row-major, matching the kernel's packing
    codes = K.lower_gram_search(m.data, s.order, s.add_table, s.mul_table, s.zero, 0, total)
    return _lower_from_codes(s, codes, n)


def diagonal_involutions(s: Semiring, n: int) -> list[Matrix]:
    """All diagonal ``D`` of size ``n`` with ``D^2 = I``, lexicographic in the diagonal."""
    if not s.is_finite:
        raise NotEnumerable("involutions need a finite semiring")
    roots = s.square_roots(s.one)
    return [Matrix.diag(s, d) for d in itertools.product(roots, repeat=n)]


def lu(m: Matrix) -> tuple[Matrix, Matrix]:
    """``M = L U`` with unit lower-triangular ``L`` and upper-triangular ``U``.

    Requires strong invertibility; the diagonal of ``U`` then consists of
    units.
    """
    if not m.is_square:
        raise ShapeMismatch("lu needs a square matrix")
    bad = strong_invertibility(m)
    if bad is not None:
        raise StronglyInvertibleRequired(bad)
    s = m.semiring
    n = m.n
    lower = Matrix.identity(s, n).data.astype(object).copy()
    upper = np.full((n, n), s.zero, dtype=object)
    work = m.data.astype(object).copy()
    for step in range(n):
        a = work[0, 0]
        a_inv = s.inverse(a)
        if a_inv is None:  # pragma: no cover - excluded by the strong invertibility check
            raise PivotNotInvertible(a)
        col = list(work[1:, 0])
        row = list(work[0, 1:])
        upper[step, step:] = work[0, :]
        for i, b in enumerate(col):
            lower[step + 1 + i, step] = s.mul(a_inv, b)
        if step < n - 1:
            work = _schur_update(s, a_inv, col, row, work[1:, 1:].copy())
    return Matrix(s, lower), Matrix(s, upper)
