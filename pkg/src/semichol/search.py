"""Counterexample hunting over all symmetric matrices of a given size."""

from __future__ import annotations

import re
from typing import Callable, Iterator

from .classify import YES, enumerate_symmetric, has_nonneg_numerical_range, is_positive_semidefinite
from .factorization import SEARCH_LIMIT, all_cholesky_factors, cholesky
from .matrix import Matrix, is_strongly_invertible
from .semiring import FiniteSemiring

PREDICATES: dict[str, Callable[[Matrix], bool]] = {
    "symmetric": lambda m: m.is_symmetric(),
    "invertible": lambda m: m.is_invertible(),
    "strongly-invertible": is_strongly_invertible,
    "nnr": lambda m: has_nonneg_numerical_range(m).status == YES,
    "psd": lambda m: is_positive_semidefinite(m).status == YES,
    # the factorization routine succeeds
    "cholesky": lambda m: cholesky(m).ok,
    # some lower-triangular L with L L^T = M exists, found by enumeration
    "factorable": lambda m: bool(all_cholesky_factors(m)),
}

_NEGATIONS = ("!", "~", "¬", "not-", "not ")


def parse_predicates(text: str) -> list[tuple[str, bool]]:
    """``"strongly-invertible & nnr & !cholesky"`` -> [(name, wanted), ...].

    Literals may be joined by ``&``, ``,``, ``∧`` or the word ``and``.
    """
    literals = []
    for raw in re.split(r"\s*(?:&|,|∧|\band\b)\s*", text.strip()):
        lit = raw.strip().lower()
        if not lit:
            continue
        wanted = True
        for neg in _NEGATIONS:
            if lit.startswith(neg):
                wanted = False
                lit = lit[len(neg):].strip()
                break
        if lit not in PREDICATES:
            raise ValueError(f"unknown predicate {lit!r}; choose from {sorted(PREDICATES)}")
        literals.append((lit, wanted))
    if not literals:
        raise ValueError("empty predicate conjunction")
    return literals


def search(s: FiniteSemiring, n: int, literals, limit: int | None = None, guard: int = SEARCH_LIMIT) -> Iterator[Matrix]:
    """Stream symmetric matrices satisfying every literal, in canonical order.

    Literals are evaluated left to right with short-circuiting, so put cheap
    ones first.
    """
    if isinstance(literals, str):
        literals = parse_predicates(literals)
    found = 0
    for m in enumerate_symmetric(s, n, guard):
        if all(PREDICATES[name](m) == wanted for name, wanted in literals):
            yield m
            found += 1
            if limit is not None and found >= limit:
                return
