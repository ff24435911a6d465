"""Table-driven inner loops.

Every kernel exists twice: a loop form compiled with numba ``@njit`` and a
vectorised numpy form.  The loop form is used unless numba is missing or
``SEMICHOL_DISABLE_NUMBA`` is set to a truthy value in the environment
before import.  Both forms return identical arrays (the test-suite checks
this), including the order in which search hits and closure parents are
recorded.

All element arrays are ``int64`` indices into the semiring's Cayley tables.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLE = os.environ.get("SEMICHOL_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _DISABLE

# numpy fallback processes search spaces in slices of this many candidates
CHUNK = 1 << 15


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


@lru_cache(maxsize=64)
def all_vectors(q: int, n: int) -> np.ndarray:
    """Every vector of S^n as rows, first coordinate most significant."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    out = np.indices((q,) * n, dtype=np.int64).reshape(n, -1).T.copy()
    out.setflags(write=False)
    return out


def decode(codes: np.ndarray, q: int, width: int) -> np.ndarray:
    """Base-q digits of ``codes``, most significant first, shape (len, width)."""
    powers = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (np.asarray(codes, dtype=np.int64)[:, None] // powers[None, :]) % q


def encode(digits: np.ndarray, q: int) -> np.ndarray:
    width = digits.shape[-1]
    powers = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (digits * powers).sum(axis=-1)


# ---------------------------------------------------------------------------
# loop forms (numba sources)


def _matmul_loops(a, b, add, mul, zero):
    m, k = a.shape
    n = b.shape[1]
    out = np.empty((m, n), dtype=np.int64)
    for i in range(m):
        for j in range(n):
            acc = zero
            for t in range(k):
                acc = add[acc, mul[a[i, t], b[t, j]]]
            out[i, j] = acc
    return out


def _matvec_batch_loops(m, xs, add, mul, zero):
    rows, cols = m.shape
    count = xs.shape[0]
    out = np.empty((count, rows), dtype=np.int64)
    for c in range(count):
        for i in range(rows):
            acc = zero
            for j in range(cols):
                acc = add[acc, mul[m[i, j], xs[c, j]]]
            out[c, i] = acc
    return out


def _quadratic_batch_loops(m, xs, add, mul, zero):
    n = m.shape[0]
    count = xs.shape[0]
    out = np.empty(count, dtype=np.int64)
    for c in range(count):
        total = zero
        for i in range(n):
            row = zero
            for j in range(n):
                row = add[row, mul[m[i, j], xs[c, j]]]
            total = add[total, mul[xs[c, i], row]]
        out[c] = total
    return out


def _lower_gram_search_loops(target, q, add, mul, zero, start, stop):
    # lower-triangular entries are packed row-major: L00, L10, L11, L20, ...
    n = target.shape[0]
    width = n * (n + 1) // 2
    hits = np.empty(stop - start, dtype=np.int64)
    nhits = 0
    lower = np.zeros((n, n), dtype=np.int64)
    for code in range(start, stop):
        rem = code
        for p in range(width - 1, -1, -1):
            # position p -> (row, col) for row-major lower packing
            r = 0
            while (r + 1) * (r + 2) // 2 <= p:
                r += 1
            c = p - r * (r + 1) // 2
            lower[r, c] = rem % q
            rem //= q
        ok = True
        for i in range(n):
            if not ok:
                break
            for j in range(i + 1):
                acc = zero
                for t in range(j + 1):
                    acc = add[acc, mul[lower[i, t], lower[j, t]]]
                if acc != target[i, j]:
                    ok = False
                    break
        if ok:
            hits[nhits] = code
            nhits += 1
    return hits[:nhits]


def _closure_bfs_loops(gen_codes, q, width, add):
    size = q**width
    parent = np.full(size, -2, dtype=np.int64)
    via = np.full(size, -1, dtype=np.int64)
    ngen = gen_codes.shape[0]
    frontier = np.empty(ngen, dtype=np.int64)
    nf = 0
    for g in range(ngen):
        s = gen_codes[g]
        if parent[s] == -2:
            parent[s] = -1
            via[s] = g
            frontier[nf] = s
            nf += 1
    frontier = np.sort(frontier[:nf])
    gdig = np.empty((ngen, width), dtype=np.int64)
    for g in range(ngen):
        rem = gen_codes[g]
        for p in range(width - 1, -1, -1):
            gdig[g, p] = rem % q
            rem //= q
    fdig = np.empty(width, dtype=np.int64)
    nxt = np.empty(size, dtype=np.int64)
    while frontier.shape[0] > 0:
        nn = 0
        for fi in range(frontier.shape[0]):
            f = frontier[fi]
            rem = f
            for p in range(width - 1, -1, -1):
                fdig[p] = rem % q
                rem //= q
            for g in range(ngen):
                s = 0
                for p in range(width):
                    s = s * q + add[fdig[p], gdig[g, p]]
                if parent[s] == -2:
                    parent[s] = f
                    via[s] = g
                    nxt[nn] = s
                    nn += 1
        frontier = np.sort(nxt[:nn].copy())
    return parent, via


# ---------------------------------------------------------------------------
# numpy forms


def _matmul_numpy(a, b, add, mul, zero):
    prods = mul[a[:, :, None], b[None, :, :]]
    acc = np.full((a.shape[0], b.shape[1]), zero, dtype=np.int64)
    for t in range(a.shape[1]):
        acc = add[acc, prods[:, t, :]]
    return acc


def _matvec_batch_numpy(m, xs, add, mul, zero):
    prods = mul[m[None, :, :], xs[:, None, :]]
    acc = np.full((xs.shape[0], m.shape[0]), zero, dtype=np.int64)
    for j in range(m.shape[1]):
        acc = add[acc, prods[:, :, j]]
    return acc


def _quadratic_batch_numpy(m, xs, add, mul, zero):
    mx = _matvec_batch_numpy(m, xs, add, mul, zero)
    terms = mul[xs, mx]
    acc = np.full(xs.shape[0], zero, dtype=np.int64)
    for i in range(m.shape[0]):
        acc = add[acc, terms[:, i]]
    return acc


def _lower_pack_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    rows, cols = [], []
    for r in range(n):
        for c in range(r + 1):
            rows.append(r)
            cols.append(c)
    return np.array(rows), np.array(cols)


def _lower_gram_search_numpy(target, q, add, mul, zero, start, stop):
    n = target.shape[0]
    width = n * (n + 1) // 2
    rows, cols = _lower_pack_index(n)
    hits = []
    for lo in range(start, stop, CHUNK):
        codes = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        lower = np.zeros((codes.shape[0], n, n), dtype=np.int64)
        lower[:, rows, cols] = decode(codes, q, width)
        ok = np.ones(codes.shape[0], dtype=bool)
        for i in range(n):
            for j in range(i + 1):
                prods = mul[lower[:, i, : j + 1], lower[:, j, : j + 1]]
                acc = np.full(codes.shape[0], zero, dtype=np.int64)
                for t in range(j + 1):
                    acc = add[acc, prods[:, t]]
                ok &= acc == target[i, j]
        hits.append(codes[ok])
    return np.concatenate(hits) if hits else np.zeros(0, dtype=np.int64)


def _closure_bfs_numpy(gen_codes, q, width, add):
    size = q**width
    parent = np.full(size, -2, dtype=np.int64)
    via = np.full(size, -1, dtype=np.int64)
    uniq, first = np.unique(gen_codes, return_index=True)
    parent[uniq] = -1
    via[uniq] = first
    gdig = decode(gen_codes, q, width)
    frontier = uniq
    ngen = gen_codes.shape[0]
    while frontier.shape[0] > 0:
        found = []
        for lo in range(0, frontier.shape[0], max(1, CHUNK // max(ngen, 1))):
            block = frontier[lo : lo + max(1, CHUNK // max(ngen, 1))]
            fdig = decode(block, q, width)
            sums = encode(add[fdig[:, None, :], gdig[None, :, :]], q).ravel()
            fresh = parent[sums] == -2
            if not fresh.any():
                continue
            pos = np.flatnonzero(fresh)
            states, firstpos = np.unique(sums[pos], return_index=True)
            pos = pos[firstpos]
            parent[states] = block[pos // ngen]
            via[states] = pos % ngen
            found.append(states)
        frontier = np.sort(np.concatenate(found)) if found else np.zeros(0, dtype=np.int64)
    return parent, via


# ---------------------------------------------------------------------------
# dispatch

if HAVE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)
    matmul_numba = _jit(_matmul_loops)
    matvec_batch_numba = _jit(_matvec_batch_loops)
    quadratic_batch_numba = _jit(_quadratic_batch_loops)
    lower_gram_search_numba = _jit(_lower_gram_search_loops)
    closure_bfs_numba = _jit(_closure_bfs_loops)
else:  # pragma: no cover
    matmul_numba = matvec_batch_numba = quadratic_batch_numba = None
    lower_gram_search_numba = closure_bfs_numba = None

matmul_numpy = _matmul_numpy
matvec_batch_numpy = _matvec_batch_numpy
quadratic_batch_numpy = _quadratic_batch_numpy
lower_gram_search_numpy = _lower_gram_search_numpy
closure_bfs_numpy = _closure_bfs_numpy

if USE_NUMBA:
    matmul = matmul_numba
    matvec_batch = matvec_batch_numba
    quadratic_batch = quadratic_batch_numba
    lower_gram_search = lower_gram_search_numba
    closure_bfs = closure_bfs_numba
else:
    matmul = matmul_numpy
    matvec_batch = matvec_batch_numpy
    quadratic_batch = quadratic_batch_numpy
    lower_gram_search = lower_gram_search_numpy
    closure_bfs = closure_bfs_numpy
