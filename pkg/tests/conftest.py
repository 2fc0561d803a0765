import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from stcommute.matrix import RMatrix
from stcommute.multipoly import MPoly
from stcommute.scalar import GaussianRational

small_int = st.integers(min_value=-6, max_value=6)
small_den = st.integers(min_value=1, max_value=5)
rationals = st.builds(Fraction, small_int, small_den)
gaussian = st.builds(GaussianRational, rationals, rationals)
real_gaussian = st.builds(GaussianRational, rationals)


@st.composite
def matrices(draw, rows=None, cols=None, max_size=4, elements=real_gaussian):
    r = draw(st.integers(1, max_size)) if rows is None else rows
    c = draw(st.integers(1, max_size)) if cols is None else cols
    return RMatrix(r, c, draw(st.lists(elements, min_size=r * c, max_size=r * c)))


@st.composite
def mpolys(draw, num_vars=3, max_terms=4, max_exp=2):
    exps = st.tuples(*[st.integers(0, max_exp)] * num_vars)
    terms = draw(st.dictionaries(exps, st.builds(GaussianRational, small_int, small_int),
                                 max_size=max_terms))
    return MPoly(num_vars, terms)


def laplace_det(rows):
    """Cofactor expansion along the first row; works for any ring entries."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * laplace_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def charpoly_by_cofactors(X: RMatrix) -> list:
    """det(tI - X) by cofactor expansion over Q(i)[t], as coefficients c0..cn."""
    n = X.rows
    t = MPoly.variable(1, 0)
    rows = [[(t if i == j else 0) - MPoly.constant(1, X[i, j]) for j in range(n)]
            for i in range(n)]
    p = laplace_det(rows)
    return [p.coefficient((k,)) for k in range(n + 1)]


def poly_from_linear_factors(roots) -> list:
    """Coefficients c0..cn of prod(t - r)."""
    poly = [GaussianRational(1)]
    for r in roots:
        r = GaussianRational.coerce(r)
        nxt = [GaussianRational(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - c * r
        poly = nxt
    return poly


@pytest.fixture
def rng():
    return random.Random(20261016)
