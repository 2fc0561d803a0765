import random
from fractions import Fraction

import pytest

from stcommute.commutant import (
    analyze,
    combine_kernel,
    commutes_with_commutator,
    in_polynomial_span,
    is_non_derogatory,
    minimal_polynomial_degree,
    prop3_certificates,
    sample_B,
    shift_to_invertible,
    sylvester_phi,
    sylvester_psi,
    symbolic_B,
)
from stcommute.errors import DimensionMismatch, HypothesisViolated
from stcommute.fixtures import (
    A0,
    A1,
    B0,
    C0,
    companion,
    jordan_block,
    random_companion,
    random_rational_matrix,
    random_structured_matrix,
    random_unimodular,
)
from stcommute.matrix import RMatrix, charpoly, commutator, det, direct_sum, inverse, matrix_unit
from stcommute.mccoy import st_test
from stcommute.multipoly import MPoly, poly_eval
from stcommute.scalar import GR

from conftest import laplace_det, poly_from_linear_factors


def test_psi_of_identity_is_zero():
    assert sylvester_psi(RMatrix.identity(2)) == RMatrix.zeros(4)


def test_psi_phi_kernel_dims_fixture_matrices():
    assert analyze(A0).dim_ker_psi == 5
    assert analyze(A1).dim_ker_psi == 8
    assert analyze(A0).dim_ker_psi2 == 8
    assert analyze(A1).dim_ker_psi2 == 12


def test_phi_of_zero():
    assert sylvester_phi(RMatrix.zeros(3)).is_zero()
    assert analyze(RMatrix.zeros(3)).dim_ker_psi2 == 9


def test_psi_represents_sylvester_map(rng):
    for n in (2, 3, 4):
        for _ in range(20):
            A = random_rational_matrix(rng, n)
            X = random_rational_matrix(rng, n)
            v = RMatrix(n * n, 1, X.vec())
            assert (sylvester_psi(A) @ v).vec() == (A @ X - X @ A).vec()


def test_phi_represents_second_order_map(rng):
    for n in (2, 3):
        for _ in range(5):
            A = random_rational_matrix(rng, n)
            X = random_rational_matrix(rng, n)
            v = RMatrix(n * n, 1, X.vec())
            expected = A @ A @ X + X @ A @ A - (A @ X @ A) * 2
            assert (sylvester_phi(A) @ v).vec() == expected.vec()


def test_ker_psi_inside_ker_phi(rng):
    from stcommute.matrix import rref_kernel

    for _ in range(10):
        A = random_structured_matrix(rng, rng.randint(2, 4))
        phi = sylvester_phi(A)
        n2 = A.rows ** 2
        for v in rref_kernel(sylvester_psi(A)).vectors:
            assert (phi @ RMatrix(n2, 1, v)).is_zero()


def test_psi_spectrum_of_diagonal(rng):
    for _ in range(3):
        d = rng.sample(range(-6, 7), 3)
        A = RMatrix.diag(d)
        expected = poly_from_linear_factors([di - dj for di in d for dj in d])
        assert charpoly(sylvester_psi(A)) == expected


def test_analyze_examples():
    r0 = analyze(A0)
    assert (r0.dim_ker_psi, r0.dim_ker_psi2, r0.index) == (5, 8, Fraction(1, 3))
    r1 = analyze(A1)
    assert (r1.dim_ker_psi, r1.dim_ker_psi2, r1.index) == (8, 12, Fraction(1, 4))
    assert r1.zero_pattern == {(1, 0), (1, 2), (3, 0), (3, 2)}
    for n in (1, 2, 3):
        r = analyze(RMatrix.identity(n))
        assert (r.dim_ker_psi, r.dim_ker_psi2, r.index) == (n * n, n * n, 0)


def test_report_invariants(rng):
    for _ in range(10):
        A = random_structured_matrix(rng, rng.randint(2, 4))
        r = analyze(A)
        n2 = r.n ** 2
        assert 0 <= r.dim_ker_psi <= r.dim_ker_psi2 <= n2
        assert r.index == Fraction(r.dim_ker_psi2 - r.dim_ker_psi, n2)
        assert len(r.kernel_basis_psi2.vectors) == r.dim_ker_psi2
        assert r.kernel_basis_psi2.rank_of_operator + r.dim_ker_psi2 == n2
        for (i, j) in r.zero_pattern:
            assert all(not v[i * r.n + j] for v in r.kernel_basis_psi2.vectors)


def test_index_invariant_under_similarity(rng):
    for _ in range(5):
        n = rng.randint(2, 4)
        A = random_structured_matrix(rng, n)
        P = random_unimodular(rng, n)
        assert analyze(inverse(P) @ A @ P).index == analyze(A).index


def test_sample_B_satisfies_hypothesis(rng):
    for _ in range(15):
        A = random_structured_matrix(rng, rng.randint(2, 4))
        r = analyze(A)
        B = sample_B(r, rng.getrandbits(32), 6)
        assert commutes_with_commutator(A, B)


def test_sample_B_deterministic_and_respects_zero_pattern():
    r = analyze(A1)
    for seed in range(5):
        B = sample_B(r, seed, 10)
        assert B == sample_B(r, seed, 10)
        assert all(not B[i, j] for i, j in r.zero_pattern)


def test_zero_combination_is_zero_matrix():
    r = analyze(A0)
    assert combine_kernel(r, [0] * r.dim_ker_psi2) == RMatrix.zeros(3)


def test_symbolic_B_star_pattern():
    Bsym = symbolic_B(analyze(A1))
    for i in range(4):
        for j in range(4):
            if (i, j) in {(1, 0), (1, 2), (3, 0), (3, 2)}:
                assert Bsym[i, j].is_zero()
            else:
                # a single free parameter per star
                assert len(Bsym[i, j]) == 1 and Bsym[i, j].degree() == 1
    variables = {next(iter(Bsym[i, j].terms()))[0] for i in range(4) for j in range(4)
                 if Bsym[i, j]}
    assert len(variables) == 12


def test_symbolic_B_of_zero_matrix():
    Bsym = symbolic_B(analyze(RMatrix.zeros(2)))
    assert sorted(e.terms()[0][0] for e in Bsym.entries) == sorted(
        tuple(1 if k == m else 0 for k in range(4)) for m in range(4))


def test_symbolic_B_specializes_to_sample(rng):
    r = analyze(A0)
    Bsym = symbolic_B(r)
    coeffs = [rng.randint(-4, 4) for _ in range(r.dim_ker_psi2)]
    assert Bsym.map(lambda p: poly_eval(p, coeffs)) == combine_kernel(r, coeffs)


def test_commutes_examples():
    assert commutes_with_commutator(A0, B0)
    X = RMatrix.from_rows([[1, 2], [3, 4]])
    assert commutes_with_commutator(X, X)
    A = direct_sum(jordan_block(2), RMatrix.zeros(1))
    E13 = matrix_unit(3, 0, 2)
    C = A @ E13 - E13 @ A
    assert commutes_with_commutator(A, E13) == (A @ C == C @ A)
    with pytest.raises(DimensionMismatch):
        commutes_with_commutator(A0, X)


def test_non_derogatory_examples():
    assert not is_non_derogatory(A0)
    for n in (1, 2, 3, 4):
        assert is_non_derogatory(jordan_block(n))
    assert is_non_derogatory(RMatrix.diag([1, 2, 3]))
    assert minimal_polynomial_degree(RMatrix.identity(3)) == 1
    assert minimal_polynomial_degree(A1) == 2


def test_companion_is_non_derogatory(rng):
    for _ in range(10):
        assert is_non_derogatory(random_companion(rng, rng.randint(2, 4)))


def test_polynomial_span_examples(rng):
    A = random_rational_matrix(rng, 3)
    c = in_polynomial_span(A, A @ A + A * 3)
    if is_non_derogatory(A):
        assert c == [GR(0), GR(3), GR(1)]
    for n in (2, 3, 4):
        J = jordan_block(n)
        assert in_polynomial_span(J, matrix_unit(n, 0, n - 1)) == [GR(0)] * (n - 1) + [GR(1)]
    assert in_polynomial_span(jordan_block(3), matrix_unit(3, 2, 0)) is None


def test_polynomial_span_for_non_derogatory_hypothesis(rng):
    for _ in range(10):
        A = random_companion(rng, 3)
        B = sample_B(analyze(A), rng.getrandbits(32), 5)
        C = commutator(A, B)
        coeffs = in_polynomial_span(A, C)
        assert coeffs is not None
        P, total = RMatrix.identity(3), RMatrix.zeros(3)
        for c in coeffs:
            total, P = total + P * c, P @ A
        assert total == C


def test_shift_to_invertible_counterexample():
    A1s, B1s, lam, mu = shift_to_invertible(A0, B0)
    # cofactor oracle: det(A0) = det(B0) = 0 and det(A0 + I) = det(B0 + I) = 1
    assert laplace_det(A0.to_rows()) == 0 and laplace_det(B0.to_rows()) == 0
    assert laplace_det(A1s.to_rows()) == 1 and laplace_det(B1s.to_rows()) == 1
    assert (lam, mu) == (1, 1)
    assert commutator(A1s, B1s) == C0
    assert commutes_with_commutator(A1s, B1s)


def test_shift_examples():
    X = RMatrix.from_rows([[2, 1], [0, 3]])
    assert shift_to_invertible(X, X)[2:] == (0, 0)
    assert shift_to_invertible(RMatrix.zeros(2), X)[2] == 1
    D = RMatrix.diag([0, -1, -2])
    assert shift_to_invertible(D, D)[2:] == (3, 3)


def test_prop3_certificates_counterexample():
    cert = prop3_certificates(A0, B0)
    assert cert.passed
    assert cert.conjugation_identity is True


def test_prop3_certificates_random(rng):
    for _ in range(8):
        A = random_structured_matrix(rng, 3)
        B = sample_B(analyze(A), rng.getrandbits(32), 5)
        assert prop3_certificates(A, B).passed


def test_prop3_hypothesis_violated():
    E12, E21 = matrix_unit(2, 0, 1), matrix_unit(2, 1, 0)
    with pytest.raises(HypothesisViolated):
        prop3_certificates(E12, E21)


def test_two_by_two_pairs_are_st(rng):
    from stcommute.scenarios import random_2x2_pair

    for _ in range(30):
        A, B = random_2x2_pair(rng)
        assert commutes_with_commutator(A, B)
        assert st_test(A, B).is_st
