from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from revnf import linalg

entries = st.integers(-3, 3).map(Fraction) | st.fractions(-2, 2, max_denominator=3)


@st.composite
def matrices(draw, max_rows=6, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # sparse-ish so that kernels are common
    cells = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), entries)
    return [[draw(cells) for _ in range(c)] for _ in range(r)]


def columns_of(M):
    return [{i: M[i][j] for i in range(len(M)) if M[i][j]} for j in range(len(M[0]))]


def rows_of(M):
    return [{j: x for j, x in enumerate(row) if x} for row in M]


def dense(v, n):
    return [v.get(i, Fraction(0)) for i in range(n)]


def sym(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M])


@given(matrices())
def test_rref_matches_sympy(M):
    R, piv = sym(M).rref()
    expected = [list(R.row(i)) for i in range(len(piv))]
    got = [dense(v, len(M[0])) for v in linalg.rref(rows_of(M))]
    assert got == expected


@given(matrices())
def test_rank_and_nullity(M):
    cols = columns_of(M)
    assert linalg.rank(cols) == sym(M).rank()
    assert len(linalg.nullspace(cols)) == len(M[0]) - sym(M).rank()


@given(matrices())
def test_nullspace_vectors_annihilate(M):
    cols = columns_of(M)
    for v in linalg.nullspace(cols):
        assert linalg.apply_combination(cols, v) == {}


@given(matrices())
def test_nullspace_is_the_rref_of_sympys(M):
    ns = sym(M).nullspace()
    expected = linalg.rref([{j: Fraction(int(x.p), int(x.q)) for j, x in enumerate(v) if x} for v in ns])
    assert linalg.nullspace(columns_of(M)) == expected


@given(matrices(), st.lists(entries, min_size=7, max_size=7))
def test_solve_consistent_systems(M, coeffs):
    cols = columns_of(M)
    x = dict(enumerate(coeffs[: len(cols)]))
    rhs = linalg.apply_combination(cols, x)
    sol = linalg.solve(cols, rhs)
    assert sol is not None
    assert linalg.apply_combination(cols, sol) == rhs
    # supported on pivot columns only
    _, _, pivots, _ = linalg.column_reduce(cols)
    assert set(sol) <= set(pivots)


def test_solve_reports_inconsistency():
    cols = [{0: Fraction(1)}, {0: Fraction(2)}]
    assert linalg.solve(cols, {1: Fraction(1)}) is None
    assert linalg.solve(cols, {}) == {}


def test_solve_sets_free_variables_to_zero():
    cols = [{0: 1}, {0: 2}, {1: 1}]
    assert linalg.solve(cols, {0: 4, 1: 1}) == {0: 4, 2: 1}


@given(matrices(), matrices())
def test_intersection_dimension_formula(A, B):
    a, b = rows_of(A), rows_of(B)
    inter = linalg.intersect_spans(linalg.rref(a), linalg.rref(b))
    dim_sum = len(linalg.rref(a + b))
    assert len(inter) == len(linalg.rref(a)) + len(linalg.rref(b)) - dim_sum
    ra, rb = linalg.RREF(a), linalg.RREF(b)
    assert all(ra.contains(v) and rb.contains(v) for v in inter)


def test_rref_incremental_contains_and_reduce():
    ech = linalg.RREF()
    assert ech.add({0: 2, 1: 4})
    assert not ech.add({0: 1, 1: 2})
    assert ech.contains({0: Fraction(1, 3), 1: Fraction(2, 3)})
    assert ech.reduce({0: 1, 1: 2, 2: 5}) == {2: 5}
    assert ech.basis() == [{0: 1, 1: 2}]
    assert ech.pivots == [0]


def test_large_entries_stay_exact():
    # Hilbert-like matrix: exact rank is full
    n = 7
    M = [[Fraction(1, i + j + 1) for j in range(n)] for i in range(n)]
    assert linalg.rank(columns_of(M)) == n
    assert linalg.nullspace(columns_of(M)) == []
