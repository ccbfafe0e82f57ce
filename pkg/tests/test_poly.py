from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from revnf.poly import (
    PolyError, ScalarPoly, VecPoly, compose_truncated, format_coef, from_coords,
    invert_near_identity, jacobian_times, linear_part, monomial_basis, monomial_index,
    parse_coef, poly_from_terms, poly_to_terms, postcompose_linear, slice_dim, to_coords,
)

from conftest import from_sympy, homogeneous_vec, scalar_polys, to_sympy, vec_polys

X = sympy.symbols("x1:4")


def test_monomial_basis_is_graded_lex_with_x1_first():
    assert monomial_basis(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert monomial_basis(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    idx = monomial_index(3, 2)
    assert [idx[m] for m in monomial_basis(3, 2)] == list(range(6))


@pytest.mark.parametrize("n,k", [(2, 0), (2, 5), (6, 3), (6, 6)])
def test_slice_dims_match_binomials(n, k):
    assert slice_dim(n, k, vector=False) == sympy.binomial(n + k - 1, k)
    assert slice_dim(n, k) == n * sympy.binomial(n + k - 1, k)


def test_slice_dim_quoted_sizes():
    assert slice_dim(6, 5) == 6 * 252 == 1512
    assert slice_dim(6, 6) == 2772


def test_coefficients_parse_and_format():
    assert parse_coef("3/6") == Fraction(1, 2)
    assert parse_coef(" -7 ") == -7
    assert format_coef(Fraction(-2, 4)) == "-1/2"
    assert format_coef(Fraction(5)) == "5"
    for bad in ("1.5", "a/b", "1/0", ""):
        with pytest.raises(PolyError):
            parse_coef(bad)
    with pytest.raises(PolyError):
        ScalarPoly(1, {(1,): 0.5})


def test_string_form():
    x1, x2, x3 = (ScalarPoly.var(3, i) for i in range(3))
    assert str(x1 ** 2 * x2 - x3.scale(Fraction(3, 2))) == "-3/2*x3 + x1^2*x2"
    assert str(ScalarPoly.zero(3)) == "0"


@given(scalar_polys(), scalar_polys())
def test_arithmetic_matches_sympy(p, q):
    assert to_sympy(p * q, X) == sympy.expand(to_sympy(p, X) * to_sympy(q, X))
    assert to_sympy(p - q, X) == sympy.expand(to_sympy(p, X) - to_sympy(q, X))


@given(scalar_polys(), st.integers(0, 2))
def test_derivative_matches_sympy(p, i):
    assert to_sympy(p.diff(i), X) == sympy.diff(to_sympy(p, X), X[i])


@given(scalar_polys(), scalar_polys(), scalar_polys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ScalarPoly.zero(3)


@given(scalar_polys(max_deg=4), st.integers(0, 4))
def test_truncation_and_homogeneous_parts(p, k):
    parts = [p.homogeneous_part(d) for d in range(0, 5)]
    assert sum(parts[: k + 1], ScalarPoly.zero(3)) == p.truncate(k)
    for d, part in enumerate(parts):
        assert part.is_zero() or part.is_homogeneous(d)


@given(scalar_polys(), st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_linear_substitution_matches_sympy(p, entries):
    A = [entries[0:3], entries[3:6], entries[6:9]]
    Ax = [sum(A[i][j] * X[j] for j in range(3)) for i in range(3)]
    expected = sympy.expand(to_sympy(p, X).subs(dict(zip(X, Ax)), simultaneous=True))
    assert to_sympy(p.precompose(A), X) == expected


def test_evaluate():
    p = ScalarPoly(2, {(2, 0): 1, (0, 1): Fraction(-1, 3)})
    assert p.evaluate([3, 6]) == 7


@given(vec_polys(max_deg=2), vec_polys(max_deg=2))
def test_jacobian_times_matches_sympy(p, v):
    J = sympy.Matrix([[sympy.diff(to_sympy(c, X), x) for x in X] for c in p])
    V = sympy.Matrix([to_sympy(c, X) for c in v])
    got = jacobian_times(p, v)
    assert [to_sympy(c, X) for c in got] == [sympy.expand(e) for e in J * V]


def _no_constant(v: VecPoly) -> VecPoly:
    return VecPoly([c - c.homogeneous_part(0) for c in v])


@given(vec_polys(max_deg=3), vec_polys(max_deg=2), st.integers(1, 4))
def test_compose_truncated_matches_sympy(p, q, kmax):
    q = _no_constant(q)
    sub = dict(zip(X, [to_sympy(c, X) for c in q]))
    for got, comp in zip(compose_truncated(p, q, kmax), p):
        full = from_sympy(to_sympy(comp, X).subs(sub, simultaneous=True), X)
        assert got == full.truncate(kmax)


def test_compose_rejects_constant_inner_map():
    q = VecPoly([ScalarPoly.const(2, 1), ScalarPoly.var(2, 1)])
    with pytest.raises(PolyError, match="constant term"):
        compose_truncated(VecPoly.identity(2), q, 3)


@given(homogeneous_vec(3, 2), homogeneous_vec(3, 3), st.integers(2, 6))
def test_inverse_of_near_identity(a, b, kmax):
    phi = VecPoly.identity(3) + a + b
    psi = invert_near_identity(phi, kmax)
    ident = VecPoly.identity(3)
    assert compose_truncated(phi, psi, kmax) == ident
    assert compose_truncated(psi, phi, kmax) == ident


def test_inverse_rejects_bad_linear_part():
    with pytest.raises(PolyError, match="linear part"):
        invert_near_identity(VecPoly.linear([[2, 0], [0, 1]]), 3)


def test_linear_part_and_postcompose():
    A = [[0, 1], [-1, 0]]
    L = VecPoly.linear(A)
    assert linear_part(L) == [[0, 1], [-1, 0]]
    assert postcompose_linear(A, VecPoly.identity(2)) == L


@given(homogeneous_vec(3, 3))
def test_coordinates_round_trip(p):
    assert from_coords(to_coords(p, 3), 3, 3) == p


def test_to_coords_rejects_mixed_degrees():
    with pytest.raises(PolyError, match="homogeneous"):
        to_coords(VecPoly.identity(2) + VecPoly([ScalarPoly.var(2, 0) ** 2, ScalarPoly.zero(2)]), 1)


@given(vec_polys())
def test_term_records_round_trip(p):
    assert poly_from_terms(poly_to_terms(p), 3) == p


def test_term_records_are_one_based():
    p = VecPoly([ScalarPoly.zero(2), ScalarPoly(2, {(1, 0): Fraction(1, 2)})])
    assert poly_to_terms(p) == [{"component": 2, "exponents": [1, 0], "coefficient": "1/2"}]
    s = ScalarPoly(2, {(0, 2): 3})
    assert poly_to_terms(s) == [{"exponents": [0, 2], "coefficient": "3"}]
    assert poly_from_terms(poly_to_terms(s), 2, vector=False) == s
