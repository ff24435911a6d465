"""Dense matrices over a semiring.

Entries are element indices (``int64``) for finite semirings and Python
integers in an object array for the naturals.  Matrices are immutable
values; arithmetic returns new matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import IndexOutOfRange, NotEnumerable, NotInvertible, SemiringMismatch, ShapeMismatch
from .semiring import Semiring, load as load_semiring


def _same(s1: Semiring, s2: Semiring) -> bool:
    if s1 is s2:
        return True
    if s1.is_finite != s2.is_finite:
        return False
    if not s1.is_finite:
        return True
    return (
        s1.zero == s2.zero
        and s1.one == s2.one
        and np.array_equal(s1.add_table, s2.add_table)
        and np.array_equal(s1.mul_table, s2.mul_table)
    )


@dataclass(frozen=True)
class BlockView:
    """``M = [[a, row], [col, C]]``; for symmetric ``M`` the row equals the column."""

    a: int
    col: tuple
    row: tuple
    C: "Matrix"


class Matrix:
    __slots__ = ("semiring", "data")

    def __init__(self, semiring: Semiring, data):
        arr = np.array(data, dtype=np.int64 if semiring.is_finite else object)
        if arr.ndim != 2:
            raise ShapeMismatch(f"matrix data must be 2-D, got {arr.ndim}-D")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ShapeMismatch("empty matrices are not supported")
        if semiring.is_finite:
            if arr.min() < 0 or arr.max() >= semiring.order:
                raise ValueError(f"matrix entries outside [0, {semiring.order})")
        else:
            for v in arr.flat:
                semiring.check_element(v)
        arr.setflags(write=False)
        self.semiring = semiring
        self.data = arr

    # construction ---------------------------------------------------------

    @classmethod
    def identity(cls, s: Semiring, n: int) -> "Matrix":
        out = np.full((n, n), s.zero, dtype=object)
        for i in range(n):
            out[i, i] = s.one
        return cls(s, out)

    @classmethod
    def zeros(cls, s: Semiring, m: int, n: int | None = None) -> "Matrix":
        return cls(s, np.full((m, m if n is None else n), s.zero, dtype=object))

    @classmethod
    def diag(cls, s: Semiring, entries: Sequence) -> "Matrix":
        n = len(entries)
        out = np.full((n, n), s.zero, dtype=object)
        for i, e in enumerate(entries):
            out[i, i] = e
        return cls(s, out)

    @classmethod
    def parse(cls, s: Semiring, rows: Sequence[Sequence]) -> "Matrix":
        """Build from nested lists of element names or indices."""
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("rows must be a nonempty rectangular list")
        return cls(s, [[s.parse_element(v) for v in r] for r in rows])

    # basic protocol ---------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def is_square(self) -> bool:
        return self.data.shape[0] == self.data.shape[1]

    def __getitem__(self, key):
        v = self.data[key]
        return int(v) if np.ndim(v) == 0 else v

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and _same(self.semiring, other.semiring)
            and bool(np.all(self.data == other.data))
        )

    def __hash__(self) -> int:
        return hash((self.shape, tuple(int(v) for v in self.data.flat)))

    def __repr__(self) -> str:
        return f"Matrix({self.semiring.uri}, {self.names()})"

    def tolist(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.data]

    def names(self) -> list[list[str]]:
        return [[self.semiring.name(v) for v in row] for row in self.data]

    def to_json(self) -> dict:
        return {"semiring": self.semiring.uri, "rows": self.names()}

    # arithmetic -------------------------------------------------------------

    def _check_same(self, other: "Matrix") -> None:
        if not _same(self.semiring, other.semiring):
            raise SemiringMismatch(f"{self.semiring.uri} vs {other.semiring.uri}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        s = self.semiring
        if s.is_finite:
            return Matrix(s, s.add_table[self.data, other.data])
        return Matrix(s, self.data + other.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        s = self.semiring
        if s.is_finite:
            return Matrix(s, K.matmul(self.data, other.data, s.add_table, s.mul_table, s.zero))
        return Matrix(s, self.data.dot(other.data))

    def scale(self, c) -> "Matrix":
        s = self.semiring
        return Matrix(s, [[s.mul(c, v) for v in row] for row in self.data])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.semiring, self.data.T)

    def matvec(self, x: Sequence) -> tuple:
        s = self.semiring
        if len(x) != self.shape[1]:
            raise ShapeMismatch(f"vector of length {len(x)} for {self.shape} matrix")
        return tuple(s.sum(s.mul(self.data[i, j], x[j]) for j in range(self.shape[1])) for i in range(self.shape[0]))

    def quadratic_form(self, x: Sequence):
        """x^T M x."""
        s = self.semiring
        return s.sum(s.mul(xi, yi) for xi, yi in zip(x, self.matvec(x)))

    # structure ---------------------------------------------------------------

    def is_symmetric(self) -> bool:
        return self.is_square and bool(np.all(self.data == self.data.T))

    def is_lower_triangular(self) -> bool:
        z = self.semiring.zero
        return self.is_square and all(self.data[i, j] == z for i in range(self.n) for j in range(i + 1, self.n))

    def is_upper_triangular(self) -> bool:
        return self.T.is_lower_triangular()

    def leading(self, k: int) -> "Matrix":
        """Top-left ``k x k`` block."""
        if not self.is_square:
            raise ShapeMismatch("leading principal submatrices need a square matrix")
        if not 1 <= k <= self.n:
            raise IndexOutOfRange(f"k={k} outside [1, {self.n}]")
        return Matrix(self.semiring, self.data[:k, :k])

    def block(self) -> BlockView:
        if not self.is_square or self.n < 2:
            raise ShapeMismatch("block view needs a square matrix of size >= 2")
        d = self.data
        return BlockView(
            int(d[0, 0]),
            tuple(int(v) for v in d[1:, 0]),
            tuple(int(v) for v in d[0, 1:]),
            Matrix(self.semiring, d[1:, 1:]),
        )

    # invertibility -------------------------------------------------------------

    def inverse(self) -> "Matrix":
        return invert(self)

    def is_invertible(self) -> bool:
        try:
            invert(self)
        except NotInvertible:
            return False
        return True


def identity(s: Semiring, n: int) -> Matrix:
    return Matrix.identity(s, n)


def zero(s: Semiring, m: int, n: int | None = None) -> Matrix:
    return Matrix.zeros(s, m, n)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def transpose(a: Matrix) -> Matrix:
    return a.T


def is_symmetric(m: Matrix) -> bool:
    return m.is_symmetric()


def leading_principal_submatrix(m: Matrix, k: int) -> Matrix:
    return m.leading(k)


def _invert_monomial(m: Matrix) -> Matrix:
    # with no nonzero negatable elements the invertible matrices are exactly
    # the monomial matrices whose nonzero entries are units
    s = m.semiring
    n = m.n
    d = m.data
    out = np.full((n, n), s.zero, dtype=object)
    for i in range(n):
        nz = [j for j in range(n) if d[i, j] != s.zero]
        if len(nz) != 1:
            raise NotInvertible(f"row {i} has {len(nz)} nonzero entries", column=None)
        j = nz[0]
        inv = s.inverse(d[i, j])
        if inv is None:
            raise NotInvertible(f"entry ({i},{j}) is not a unit", column=j)
        out[j, i] = inv
    for j in range(n):
        if sum(1 for i in range(n) if d[i, j] != s.zero) != 1:
            raise NotInvertible(f"column {j} is not monomial", column=j)
    return Matrix(s, out)


def _invert_search(m: Matrix) -> Matrix:
    s = m.semiring
    n = m.n
    xs = K.all_vectors(s.order, n)
    images = K.matvec_batch(m.data, xs, s.add_table, s.mul_table, s.zero)
    cols = []
    for j in range(n):
        target = np.full(n, s.zero, dtype=np.int64)
        target[j] = s.one
        hit = np.flatnonzero(np.all(images == target, axis=1))
        if hit.size == 0:
            raise NotInvertible(f"M x = e_{j} has no solution", column=j)
        cols.append(xs[hit[0]])
    return Matrix(s, np.stack(cols, axis=1))


def invert(m: Matrix) -> Matrix:
    """Two-sided inverse of ``m`` or :class:`NotInvertible`.

    Antinegative semirings (including the naturals) use the monomial
    characterization; other finite semirings solve ``M x = e_j`` column by
    column by exhaustive search over S^n, then verify both products.
    """
    if not m.is_square:
        raise ShapeMismatch("only square matrices can be inverted")
    s = m.semiring
    if s.is_antinegative:
        x = _invert_monomial(m)
    elif s.is_finite:
        x = _invert_search(m)
    else:  # pragma: no cover - every supported infinite semiring is antinegative
        raise NotEnumerable("no inversion strategy for this semiring")
    eye = Matrix.identity(s, m.n)
    if m @ x != eye or x @ m != eye:
        raise NotInvertible("candidate inverse fails the two-sided check")
    return x


def strong_invertibility(m: Matrix) -> int | None:
    """Size of the first non-invertible leading principal submatrix, or None."""
    if not m.is_square:
        raise ShapeMismatch("strong invertibility needs a square matrix")
    for k in range(1, m.n + 1):
        if not m.leading(k).is_invertible():
            return k
    return None


def is_strongly_invertible(m: Matrix) -> bool:
    return strong_invertibility(m) is None


# file format -------------------------------------------------------------------


def load_matrix(ref: str | dict, semiring: Semiring | None = None) -> Matrix:
    """Read ``{"semiring": uri, "rows": [[...]]}`` from a path, JSON text or dict.

    A bare nested list is accepted when ``semiring`` is supplied.
    """
    data = _read_json(ref)
    if isinstance(data, list):
        if semiring is None:
            raise ValueError("a bare row list needs an explicit semiring")
        return Matrix.parse(semiring, data)
    if not isinstance(data, dict) or "rows" not in data:
        raise ValueError("matrix JSON needs a 'rows' field")
    s = semiring
    if "semiring" in data:
        declared = load_semiring(data["semiring"])
        if s is None:
            s = declared
        elif not _same(s, declared):
            raise SemiringMismatch(f"matrix declares {data['semiring']} but {s.uri} was requested")
    if s is None:
        raise ValueError("matrix JSON names no semiring")
    return Matrix.parse(s, data["rows"])


def _read_json(ref):
    if isinstance(ref, (dict, list)):
        return ref
    text = str(ref).strip()
    if not text.startswith(("{", "[")):
        text = Path(ref).read_text()
    return json.loads(text)


def load_vector(ref, semiring: Semiring) -> tuple[int, ...]:
    """Read a vector as a bare list or ``{"semiring": uri, "entries": [...]}``."""
    data = _read_json(ref)
    if isinstance(data, dict):
        if "semiring" in data and not _same(load_semiring(data["semiring"]), semiring):
            raise SemiringMismatch(f"vector declares {data['semiring']} but {semiring.uri} was requested")
        data = data.get("entries")
    if not isinstance(data, list) or not data:
        raise ValueError("vector JSON must be a nonempty list of entries")
    return tuple(semiring.parse_element(v) for v in data)


def vector_names(s: Semiring, v: Iterable) -> list[str]:
    return [s.name(x) for x in v]
