import itertools

import pytest

from semichol import from_uri

BUILTINS = ["bool", "zn:2", "zn:3", "zn:4", "zn:6", "product:zn:2,bool", "chain:2", "z2x3"]
SMALL = [u for u in BUILTINS if from_uri(u).order <= 4]


@pytest.fixture(scope="session")
def semirings():
    return {u: from_uri(u) for u in BUILTINS}


@pytest.fixture(params=BUILTINS)
def builtin(request, semirings):
    return semirings[request.param]


# pure-python oracles: no numpy tables, no kernels ------------------------------


def tables(s):
    return s.add_table.tolist(), s.mul_table.tolist()


def naive_matmul(s, a, b):
    add, mul = tables(s)
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = s.zero
            for t in range(len(b)):
                acc = add[acc][mul[a[i][t]][b[t][j]]]
            row.append(acc)
        out.append(row)
    return out


def naive_transpose(a):
    return [list(r) for r in zip(*a)]


def naive_quadratic(s, m, x):
    add, mul = tables(s)
    acc = s.zero
    for i in range(len(x)):
        for j in range(len(x)):
            acc = add[acc][mul[mul[x[i]][m[i][j]]][x[j]]]
    return acc


def naive_squares(s):
    _, mul = tables(s)
    return {mul[b][b] for b in range(s.order)}


def naive_is_invertible(s, m):
    """Search every n x n candidate; only usable for tiny q and n."""
    n = len(m)
    eye = [[s.one if i == j else s.zero for j in range(n)] for i in range(n)]
    for flat in itertools.product(range(s.order), repeat=n * n):
        x = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if naive_matmul(s, m, x) == eye and naive_matmul(s, x, m) == eye:
            return True
    return False


def symmetric_matrices(s, n):
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    for vals in itertools.product(range(s.order), repeat=len(idx)):
        m = [[0] * n for _ in range(n)]
        for (i, j), v in zip(idx, vals):
            m[i][j] = m[j][i] = v
        yield m


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
