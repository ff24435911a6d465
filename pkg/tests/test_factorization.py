import itertools

import pytest

from semichol import (
    Matrix,
    NotEnumerable,
    PivotNotInvertible,
    SearchTooLarge,
    StronglyInvertibleRequired,
    SubdiagonalNotNegatable,
    all_cholesky_factors,
    cholesky,
    diagonal_involutions,
    from_uri,
    has_nonneg_numerical_range,
    identity,
    is_strongly_invertible,
    lu,
    make_boolean,
    make_naturals,
    make_product,
    make_z2x_mod_x3,
    make_zn,
    schur_complement,
    verify_schur_identity,
)
from semichol.classify import YES
from semichol.factorization import NOT_STRONGLY_INVERTIBLE, NOT_SYMMETRIC, PIVOT_NOT_SQUARE, SUCCESS

from conftest import BUILTINS, SMALL, naive_matmul, naive_transpose, symmetric_matrices


@pytest.fixture(scope="module")
def z6():
    return make_zn(6)


def schur_oracle(s, m):
    """C + a^{-1} (-b) b^T written out with the raw tables."""
    add, mul = s.add_table.tolist(), s.mul_table.tolist()
    a_inv = s.inverse(m[0][0])
    n = len(m)
    out = []
    for i in range(1, n):
        row = []
        for j in range(1, n):
            nb = s.neg(m[i][0])
            row.append(add[m[i][j]][mul[mul[a_inv][nb]][m[0][j]]])
        out.append(row)
    return out


def test_schur_examples(z6):
    assert schur_complement(Matrix(z6, [[5, 2], [2, 1]])).tolist() == [[5]]
    assert schur_complement(Matrix(z6, [[1, 2], [2, 5]])).tolist() == [[1]]
    c = [[3, 1], [1, 4]]
    m = Matrix(z6, [[5, 0, 0], [0, 3, 1], [0, 1, 4]])
    assert schur_complement(m).tolist() == c


def test_schur_errors():
    with pytest.raises(PivotNotInvertible):
        schur_complement(Matrix(make_zn(6), [[2, 1], [1, 1]]))
    b = make_boolean()
    with pytest.raises(SubdiagonalNotNegatable):
        schur_complement(Matrix(b, [[1, 1], [1, 1]]))


def test_schur_identity_examples(z6):
    assert verify_schur_identity(Matrix(z6, [[1, 2], [2, 5]]))
    assert verify_schur_identity(Matrix(z6, [[5, 2], [2, 1]]))
    assert verify_schur_identity(Matrix(z6, [[5, 0, 0], [0, 3, 1], [0, 1, 4]]))


def _schur_applicable(s, m):
    return s.is_unit(m[0][0]) and all(s.is_add_invertible(m[i][0]) for i in range(1, len(m)))


@pytest.mark.parametrize("uri", BUILTINS)
def test_schur_matches_oracle_and_identity(uri):
    s = from_uri(uri)
    for n in (2, 3) if s.order <= 4 else (2,):
        for m in symmetric_matrices(s, n):
            if not _schur_applicable(s, m):
                continue
            mm = Matrix(s, m)
            assert schur_complement(mm).tolist() == schur_oracle(s, m)
            assert verify_schur_identity(mm)


def test_cholesky_examples(z6):
    r = cholesky(Matrix(z6, [[5, 2], [2, 1]]))
    assert (r.status, r.step, r.pivot) == (PIVOT_NOT_SQUARE, 0, 5)
    r = cholesky(Matrix(z6, [[1, 2], [2, 5]]))
    assert r.status == SUCCESS
    assert r.factor.tolist() == [[1, 0], [2, 1]]
    assert r.pivots == [1, 1]
    for u in BUILTINS:
        s = from_uri(u)
        assert cholesky(identity(s, 3)).factor == identity(s, 3)


def test_cholesky_z2x(z6):
    s = make_z2x_mod_x3()
    m = Matrix.parse(s, [["1", "0"], ["0", "1+x^2"]])
    r = cholesky(m)
    assert r.ok and r.factor @ r.factor.T == m
    assert r.factor.names() == [["1", "0"], ["0", "1+x"]]


def test_cholesky_failure_statuses(z6):
    assert cholesky(Matrix(z6, [[1, 2], [3, 1]])).status == NOT_SYMMETRIC
    r = cholesky(Matrix(z6, [[2, 1], [1, 1]]))
    assert (r.status, r.k) == (NOT_STRONGLY_INVERTIBLE, 1)
    # [[1,1],[1,1]]: first pivot fine, Schur complement is 0, not a unit
    r = cholesky(Matrix(z6, [[1, 1], [1, 1]]))
    assert (r.status, r.k, r.step) == (NOT_STRONGLY_INVERTIBLE, 2, 1)
    b = make_boolean()
    r = cholesky(Matrix(b, [[1, 1], [1, 1]]))
    assert r.status == "SubdiagonalNotNegatable" and r.step == 0


def test_verify_levels(z6):
    assert cholesky(Matrix(z6, [[1, 2], [2, 5]]), verify="theorem").verified_hypotheses == "local"
    r = cholesky(identity(make_zn(2), 2), verify="theorem")
    assert r.verified_hypotheses == "theorem"
    with pytest.raises(ValueError):
        cholesky(identity(z6, 2), verify="nope")


def test_cholesky_over_naturals():
    nat = make_naturals()
    r = cholesky(identity(nat, 3))
    assert r.ok and r.factor == identity(nat, 3)
    assert cholesky(Matrix(nat, [[4, 0], [0, 1]])).status == NOT_STRONGLY_INVERTIBLE


def brute_factors(s, m):
    n = len(m)
    cells = [(i, j) for i in range(n) for j in range(i + 1)]
    out = []
    for vals in itertools.product(range(s.order), repeat=len(cells)):
        lo = [[s.zero] * n for _ in range(n)]
        for (i, j), v in zip(cells, vals):
            lo[i][j] = v
        if naive_matmul(s, lo, naive_transpose(lo)) == m:
            out.append(lo)
    return out


def test_all_factors_examples(z6):
    s = make_product(make_zn(2), make_boolean())
    m = Matrix.parse(s, [["(1,0)", "(0,1)"], ["(0,1)", "(1,0)"]])
    assert all_cholesky_factors(m) == []
    eye = [f.tolist() for f in all_cholesky_factors(identity(z6, 2))]
    assert sorted(eye) == sorted([[[a, 0], [0, b]] for a in (1, 5) for b in (1, 5)])
    b = make_boolean()
    assert [f.tolist() for f in all_cholesky_factors(Matrix(b, [[0, 0], [0, 0]]))] == [[[0, 0], [0, 0]]]


@pytest.mark.parametrize("uri", ["bool", "zn:3", "zn:6", "product:zn:2,bool"])
def test_all_factors_match_brute_force(uri):
    s = from_uri(uri)
    for m in itertools.islice(symmetric_matrices(s, 2), 0, None, 2):
        assert [f.tolist() for f in all_cholesky_factors(Matrix(s, m))] == brute_factors(s, m)


def test_factor_guard():
    s = make_z2x_mod_x3()
    with pytest.raises(SearchTooLarge) as info:
        all_cholesky_factors(identity(s, 4), limit=10**7)
    assert info.value.candidates == 8**10
    with pytest.raises(NotEnumerable):
        all_cholesky_factors(identity(make_naturals(), 2))


def test_diagonal_involutions():
    z6 = make_zn(6)
    assert [d.tolist() for d in diagonal_involutions(z6, 1)] == [[[1]], [[5]]]
    s = make_z2x_mod_x3()
    assert [d.names() for d in diagonal_involutions(s, 1)] == [[["1"]], [["1+x^2"]]]
    b = make_boolean()
    assert diagonal_involutions(b, 3) == [identity(b, 3)]
    for d in diagonal_involutions(s, 2):
        assert d @ d == identity(s, 2)


def test_lu_examples(z6):
    lo, up = lu(Matrix(z6, [[1, 2], [2, 5]]))
    assert (lo.tolist(), up.tolist()) == ([[1, 0], [2, 1]], [[1, 2], [0, 1]])
    lo, up = lu(Matrix(z6, [[5, 2], [2, 1]]))
    assert (lo.tolist(), up.tolist()) == ([[1, 0], [4, 1]], [[5, 2], [0, 5]])
    assert lu(identity(z6, 3)) == (identity(z6, 3), identity(z6, 3))
    with pytest.raises(StronglyInvertibleRequired) as info:
        lu(Matrix(z6, [[2, 1], [1, 1]]))
    assert info.value.k == 1


@pytest.mark.parametrize("uri", SMALL)
def test_lu_on_general_matrices(uri):
    s = from_uri(uri)
    for flat in itertools.product(range(s.order), repeat=4):
        m = Matrix(s, [[flat[0], flat[1]], [flat[2], flat[3]]])
        if not is_strongly_invertible(m):
            continue
        lo, up = lu(m)
        assert lo @ up == m
        assert lo.is_lower_triangular() and up.is_upper_triangular()
        assert all(lo[i, i] == s.one and s.is_unit(up[i, i]) for i in range(2))


# properties over the exhaustive instance space ------------------------------------------


def instance_space():
    for u in BUILTINS:
        s = from_uri(u)
        for n in ((1, 2, 3) if s.order <= 4 else (1, 2)):
            yield u, n


@pytest.mark.parametrize("uri, n", list(instance_space()))
def test_cholesky_existence_uniqueness(uri, n):
    s = from_uri(uri)
    involutions = diagonal_involutions(s, n)
    checked = 0
    for m in symmetric_matrices(s, n):
        mm = Matrix(s, m)
        if not is_strongly_invertible(mm) or has_nonneg_numerical_range(mm).status != YES:
            continue
        checked += 1
        r = cholesky(mm)
        assert r.ok, (m, r.describe())
        lo = r.factor
        assert lo @ lo.T == mm
        assert lo.is_lower_triangular() and is_strongly_invertible(lo)
        for i, k in enumerate(r.pivots):
            assert k == lo[i, i]
        orbit = {lo @ d for d in involutions}
        for d in involutions:
            ld = lo @ d
            assert ld @ ld.T == mm
        if n <= 2 or s.order <= 3:
            factors = all_cholesky_factors(mm)
            assert all(f @ f.T == mm for f in factors)
            assert {f for f in factors if f.is_invertible()} == orbit
    assert checked > 0 or n > 1


@pytest.mark.parametrize("uri, n", [(u, n) for u, n in instance_space() if n >= 2])
def test_schur_preserves_hypotheses(uri, n):
    s = from_uri(uri)
    for m in symmetric_matrices(s, n):
        mm = Matrix(s, m)
        if is_strongly_invertible(mm):
            sc = schur_complement(mm)
            assert is_strongly_invertible(sc)
        if _schur_applicable(s, m) and has_nonneg_numerical_range(mm).status == YES:
            assert s.is_square(m[0][0])
            assert has_nonneg_numerical_range(schur_complement(mm)).status == YES
