from fractions import Fraction

import pytest
import sympy
from hypothesis import settings, strategies as st

from revnf.poly import ScalarPoly, VecPoly, monomial_basis

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def monomials(n, max_deg, exact=False):
    degrees = [max_deg] if exact else range(max_deg + 1)
    return st.sampled_from([m for d in degrees for m in monomial_basis(n, d)])


def scalar_polys(n=3, max_deg=3, max_terms=5):
    return st.dictionaries(monomials(n, max_deg), coefs, max_size=max_terms).map(
        lambda d: ScalarPoly(n, d))


def vec_polys(n=3, max_deg=3, max_terms=4):
    return st.lists(scalar_polys(n, max_deg, max_terms), min_size=n, max_size=n).map(VecPoly)


def homogeneous_vec(n, k, max_terms=4):
    mono = monomials(n, k, exact=True)
    comp = st.dictionaries(mono, coefs, max_size=max_terms).map(lambda d: ScalarPoly(n, d))
    return st.lists(comp, min_size=n, max_size=n).map(VecPoly)


def to_sympy(p: ScalarPoly, xs):
    """Independent rendering of a polynomial as a sympy expression."""
    expr = sympy.Integer(0)
    for m, c in p.as_dict().items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, e in zip(xs, m):
            term *= x ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, xs) -> ScalarPoly:
    P = sympy.Poly(sympy.expand(expr), *xs)
    return ScalarPoly(len(xs), {m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()})


@pytest.fixture
def xs3():
    return sympy.symbols("x1:4")
