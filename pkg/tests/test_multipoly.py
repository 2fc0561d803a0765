from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stcommute.errors import VariableCountMismatch
from stcommute.fixtures import A1
from stcommute.matrix import RMatrix, trace
from stcommute.commutant import analyze, symbolic_B
from stcommute.multipoly import MPoly, poly_arith, poly_eval, poly_is_zero
from stcommute.scalar import GR

from conftest import gaussian, mpolys


def test_difference_of_squares():
    x1, x2 = MPoly.generators(2)
    assert poly_arith(x1 + x2, x1 - x2, "mul") == x1 ** 2 - x2 ** 2


def test_times_zero():
    x1, x2 = MPoly.generators(2)
    assert ((x1 + 3) * 0).is_zero()
    assert poly_arith(x1 + x2, MPoly.constant(2, 0), "mul").is_zero()


def test_binomial_cube():
    (x1,) = MPoly.generators(1)
    expected = MPoly(1, {(3,): 1, (2,): 3, (1,): 3, (0,): 1})
    assert (x1 + 1) ** 3 == expected


def test_eval_examples():
    x1, x2 = MPoly.generators(2)
    assert poly_eval(x1 ** 2 - x2 ** 2, [3, 2]) == GR(5)
    assert poly_eval(MPoly.constant(0, 7), []) == GR(7)
    a, b, c = MPoly.generators(3)
    assert poly_eval(a * b * c, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)]) == \
        GR(Fraction(1, 30))


def test_is_zero_examples():
    x1, x2 = MPoly.generators(2)
    p = x1 * x2 + 4
    assert poly_is_zero(p - p)
    assert not poly_is_zero(x1 - x2)


def test_symbolic_word_trace_vanishes():
    # trace of A1 B (A1 B - B A1) over the 12-parameter family
    Bsym = symbolic_B(analyze(A1))
    A = A1.map(lambda e: MPoly.constant(12, e))
    W = A @ Bsym @ (A @ Bsym - Bsym @ A)
    assert poly_is_zero(trace(W))


def test_variable_count_mismatch():
    with pytest.raises(VariableCountMismatch):
        poly_arith(MPoly.variable(2, 0), MPoly.variable(3, 0), "add")
    with pytest.raises(VariableCountMismatch):
        poly_eval(MPoly.variable(2, 0), [1])


def test_no_zero_coefficients_stored():
    p = MPoly(2, {(1, 0): 1, (0, 1): 0})
    assert len(p) == 1
    x, y = MPoly.generators(2)
    assert len((x + y) - y) == 1


def test_printed_form():
    x1, x2 = MPoly.generators(2)
    assert (2 * x1 ** 2 * x2 - 3).format() == "2 * x1^2 x2 - 3"
    assert MPoly.constant(2, 0).format() == "0"


def test_partial_eval():
    x, y, t = MPoly.generators(3)
    p = t ** 3 - x * y ** 2
    assert p.partial_eval({1: 1}) == MPoly(2, {(0, 3): 1, (1, 0): -1})


@given(mpolys(), mpolys(), st.lists(gaussian, min_size=3, max_size=3))
def test_eval_is_ring_homomorphism(p, q, pt):
    assert poly_eval(p * q, pt) == poly_eval(p, pt) * poly_eval(q, pt)
    assert poly_eval(p + q, pt) == poly_eval(p, pt) + poly_eval(q, pt)


@given(mpolys(), mpolys())
def test_addition_canonical(p, q):
    assert (p + q).terms() == (q + p).terms()
    assert p + q == q + p


@given(mpolys(), mpolys())
def test_degree_additive(p, q):
    if p and q:
        assert (p * q).degree() == p.degree() + q.degree()


def test_pickle_roundtrip():
    import pickle

    x, y = MPoly.generators(2)
    p = 3 * x * y - GR(0, 1)
    assert pickle.loads(pickle.dumps(p)) == p
