"""Triangular substitution and factor-based solves of ``M y = c``.

Subtraction is not available in a semiring.  Substitution instead adds the
stored negation of each off-diagonal coefficient, and that negation exists
only because Cholesky and LU factors have their strictly triangular entries
in V(S).  The solvers therefore only accept factors with unit diagonals and
negatable off-diagonal entries.  They reject arbitrary triangular matrices.
"""

from __future__ import annotations

from typing import Sequence

from .errors import CholeskyFailure, ShapeMismatch, StructureViolation
from .factorization import cholesky, lu
from .matrix import Matrix


def _check_rhs(t: Matrix, c: Sequence) -> list:
    if not t.is_square:
        raise ShapeMismatch("triangular factor must be square")
    if len(c) != t.n:
        raise ShapeMismatch(f"right-hand side of length {len(c)} for size {t.n}")
    return [t.semiring.check_element(v) for v in c]


def _substitute(t: Matrix, c: Sequence, order: range, deps) -> tuple:
    s = t.semiring
    y = [None] * t.n
    for i in order:
        d_inv = s.inverse(t[i, i])
        if d_inv is None:
            raise StructureViolation(f"diagonal entry ({i},{i}) = {s.name(t[i, i])} is not a unit")
        acc = c[i]
        for j in deps(i):
            nl = s.neg(t[i, j])
            if nl is None:
                raise StructureViolation(f"entry ({i},{j}) = {s.name(t[i, j])} has no additive inverse")
            acc = s.add(acc, s.mul(nl, y[j]))
        y[i] = s.mul(d_inv, acc)
    return tuple(y)


def forward_substitute(lower: Matrix, c: Sequence) -> tuple:
    """``y`` with ``L y = c`` for lower-triangular ``L``."""
    c = _check_rhs(lower, c)
    if not lower.is_lower_triangular():
        raise StructureViolation("forward substitution needs a lower-triangular matrix")
    return _substitute(lower, c, range(lower.n), lambda i: range(i))


def backward_substitute(upper: Matrix, c: Sequence) -> tuple:
    """``y`` with ``U y = c`` for upper-triangular ``U``."""
    c = _check_rhs(upper, c)
    if not upper.is_upper_triangular():
        raise StructureViolation("backward substitution needs an upper-triangular matrix")
    n = upper.n
    return _substitute(upper, c, range(n - 1, -1, -1), lambda i: range(i + 1, n))


def _residual_check(m: Matrix, y: tuple, c: Sequence) -> tuple:
    if m.matvec(y) != tuple(c):
        # exact arithmetic: any residual means a broken invariant upstream
        raise AssertionError(f"solution {y} leaves a nonzero residual")
    return y


def solve_spd(m: Matrix, c: Sequence) -> tuple:
    """Solve ``M y = c`` through ``M = L L^T``; raises :class:`CholeskyFailure` if no factor is found."""
    res = cholesky(m)
    if not res.ok:
        raise CholeskyFailure(res)
    y = backward_substitute(res.factor.T, forward_substitute(res.factor, c))
    return _residual_check(m, y, c)


def solve_lu(m: Matrix, c: Sequence) -> tuple:
    lower, upper = lu(m)
    y = backward_substitute(upper, forward_substitute(lower, c))
    return _residual_check(m, y, c)
