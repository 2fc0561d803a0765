import cmath
from fractions import Fraction

import numpy as np
import pytest

from stcommute.commutant import analyze, sample_B
from stcommute.errors import DimensionMismatch, NoConvergence
from stcommute.fixtures import A0, B0, J2, jordan_block, random_rational_matrix, random_unimodular
from stcommute.matrix import RMatrix, charpoly, commutator, inverse
from stcommute.mccoy import st_test
from stcommute.multipoly import MPoly
from stcommute.scalar import GR
from stcommute.scenarios import random_valid_pair
from stcommute.spectral import (
    exact_roots,
    pencil_charpoly,
    property_l,
    property_l_exact_refutation,
    roots,
    squarefree_decomposition,
)

from conftest import poly_from_linear_factors


def close_multiset(u, v, tol=1e-9):
    """Greedy multiset comparison, enough for well separated test spectra."""
    v = list(v)
    for z in u:
        k = min(range(len(v)), key=lambda i: abs(v[i] - z))
        if abs(v[k] - z) > tol:
            return False
        v.pop(k)
    return not v


# -- roots -------------------------------------------------------------------------


def test_cube_roots_of_unity():
    w = cmath.exp(2j * cmath.pi / 3)
    assert close_multiset(roots([-1, 0, 0, 1]), [1, w, w.conjugate()])


def test_double_root_at_zero():
    assert close_multiset(roots([0, 0, 1]), [0, 0])


def test_three_real_roots():
    assert close_multiset(roots([0, -1, 0, 1]), [-1, 0, 1])


def test_repeated_roots_separated_exactly():
    # (t - 1)^3 (t + 2)^2
    p = poly_from_linear_factors([1, 1, 1, -2, -2])
    assert close_multiset(roots(p), [1, 1, 1, -2, -2], tol=1e-12)
    parts = squarefree_decomposition(p)
    assert sorted(m for _, m in parts) == [2, 3]


def test_vieta_invariants(rng):
    for _ in range(20):
        n = rng.choice([3, 4])
        p = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] + [1]
        r = roots(p)
        assert len(r) == n
        # elementary symmetric functions against the coefficients
        e = np.poly(r)  # monic, highest power first
        for k in range(1, n + 1):
            assert abs(e[k] - float(p[n - k])) < 1e-9 * (1 + abs(float(p[n - k])))


def test_roots_agree_with_numpy(rng):
    for _ in range(10):
        p = [rng.randint(-5, 5) for _ in range(4)] + [1]
        assert close_multiset(roots(p), np.roots(p[::-1]), tol=1e-7)


def test_roots_of_constant_rejected():
    with pytest.raises(ValueError):
        roots([3])


def test_no_convergence_is_reported():
    with pytest.raises(NoConvergence):
        roots([1, 2, 3, 4, 5, 1], max_iter=1)


# -- exact roots ---------------------------------------------------------------------


def test_exact_roots_examples():
    assert sorted(exact_roots([-6, 11, -6, 1]), key=lambda z: z.re) == [1, 2, 3]
    assert exact_roots([1, 0, 1]) is not None  # t^2 + 1 = (t - i)(t + i)
    assert set(exact_roots([1, 0, 1])) == {GR(0, 1), GR(0, -1)}
    assert exact_roots([-2, 0, 1]) is None
    assert exact_roots([-1, 0, 0, 1]) is None  # complex cube roots of unity
    assert exact_roots([0, 0, 1]) == [0, 0]
    half = exact_roots(poly_from_linear_factors([Fraction(1, 2), Fraction(-2, 3)]))
    assert sorted(half, key=lambda z: z.re) == [Fraction(-2, 3), Fraction(1, 2)]


def test_exact_roots_gaussian(rng):
    for _ in range(10):
        rs = [GR(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), rng.randint(-3, 3))
              for _ in range(3)]
        found = exact_roots(poly_from_linear_factors(rs))
        assert found is not None
        assert sorted(found, key=str) == sorted(rs, key=str)


# -- pencil ---------------------------------------------------------------------------


def test_pencil_diag_with_zero():
    P = pencil_charpoly(RMatrix.diag([1, 2]), RMatrix.zeros(2))
    x, y, t = MPoly.generators(3)
    assert P.to_mpoly() == (t - x) * (t - 2 * x)


def test_pencil_of_counterexample_at_y_equals_one():
    # charpoly of s*A0 + B0 is t^3 - s
    s, t = MPoly.generators(2)
    assert pencil_charpoly(A0, B0).substitute(y=1) == t ** 3 - s


def test_pencil_consistent_with_charpoly(rng):
    for _ in range(10):
        n = rng.randint(2, 4)
        A, B = random_rational_matrix(rng, n), random_rational_matrix(rng, n)
        P = pencil_charpoly(A, B)
        x, y = Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), 3)
        assert P.specialize(x, y) == charpoly(A * x + B * y)


def test_pencil_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        pencil_charpoly(RMatrix.identity(2), RMatrix.identity(3))


def test_pencil_format():
    text = pencil_charpoly(A0, B0).format()
    assert "t^3" in text and "x" in text


# -- numeric property L ----------------------------------------------------------------


def test_counterexample_pair_fails_property_l():
    rep = property_l(A0, B0)
    assert rep.verdict == "FAILS"
    assert rep.witness is not None and rep.witness[2] > 1e-3


def test_same_matrix_holds():
    X = RMatrix.from_rows([[1, 2], [3, 4]])
    assert property_l(X, X).holds


def test_commutator_pair_holds():
    C = commutator(A0, B0)
    rep = property_l(B0, C)
    assert rep.holds
    assert max(r for _, _, r in rep.samples) <= 1e-8


def test_nilpotent_jordan_pair_holds():
    assert property_l(J2, J2.T * 0).holds
    assert property_l(jordan_block(3), jordan_block(3) @ jordan_block(3)).holds


def test_scale_covariance(rng):
    for _ in range(5):
        A, B = random_valid_pair(rng, 3)
        assert property_l(A, B).verdict == property_l(A * 2, B).verdict
    assert property_l(A0 * 2, B0).verdict == "FAILS"


def test_simultaneously_triangular_pairs_hold(rng):
    """Upper triangular pairs conjugated by a common P: the diagonal pairing works."""
    for _ in range(10):
        n = 3
        U = RMatrix(n, n, [rng.randint(-3, 3) if j >= i else 0 for i in range(n) for j in range(n)])
        V = RMatrix(n, n, [rng.randint(-3, 3) if j >= i else 0 for i in range(n) for j in range(n)])
        P = random_unimodular(rng, n)
        rep = property_l(inverse(P) @ U @ P, inverse(P) @ V @ P, seed=rng.getrandbits(16))
        assert rep.holds


def test_st_implies_l_on_valid_pairs(rng):
    checked = 0
    for _ in range(25):
        A, B = random_valid_pair(rng, 3)
        if st_test(A, B).is_st:
            checked += 1
            assert property_l(A, B).holds
        # B and its commutator C always have property L under the hypothesis
        assert property_l(B, commutator(A, B)).holds
    assert checked > 0


def test_report_fields():
    rep = property_l(A0, B0, num_samples=5, seed=3)
    d = rep.to_dict()
    assert d["verdict"] == "FAILS" and d["tolerance"] == 1e-8
    ok = property_l(RMatrix.diag([1, 2]), RMatrix.diag([3, 4]), num_samples=5)
    assert len(ok.samples) == 5 and ok.pairing is not None


def test_eigenvalue_ordering_is_found():
    # eigenvalues of B listed in the opposite order of their partners in A
    A = RMatrix.diag([1, 2, 3])
    B = RMatrix.diag([7, 5, -1])
    rep = property_l(A, B)
    assert rep.holds
    pairs = {(round(rep.eigenvalues_a[j].real), round(rep.eigenvalues_b[p].real))
             for j, p in enumerate(rep.pairing)}
    assert pairs == {(1, 7), (2, 5), (3, -1)}


# -- exact property L --------------------------------------------------------------------


def test_exact_counterexample_mismatch():
    cert = property_l_exact_refutation(A0, B0)
    assert cert is not None and not cert.holds
    k, have, want = cert.mismatch
    assert have != want
    assert cert.to_dict()["mismatch"]["t_power"] == k


def test_exact_diagonal_pairs(rng):
    for _ in range(5):
        a = [rng.randint(-4, 4) for _ in range(3)]
        b = [rng.randint(-4, 4) for _ in range(3)]
        cert = property_l_exact_refutation(RMatrix.diag(a), RMatrix.diag(b))
        assert cert.holds
        perm = cert.pairing
        pairs = sorted((str(cert.eigenvalues_a[j]), str(cert.eigenvalues_b[p]))
                       for j, p in enumerate(perm))
        assert pairs == sorted((str(GR(x)), str(GR(y))) for x, y in zip(a, b))


def test_exact_zero_partner_holds():
    assert property_l_exact_refutation(A0, RMatrix.zeros(3)).holds


def test_exact_unavailable_for_irrational_spectrum():
    X = RMatrix.from_rows([[0, 2], [1, 0]])  # eigenvalues +-sqrt(2)
    assert property_l_exact_refutation(X, X) is None


def test_exact_and_numeric_agree(rng):
    agreed = 0
    for _ in range(10):
        A, B = random_valid_pair(rng, 3)
        cert = property_l_exact_refutation(A, B)
        if cert is None:
            continue
        agreed += 1
        assert cert.holds == property_l(A, B).holds
    assert agreed > 0


def test_sample_family_member_against_triangular_form():
    # A1-type block nilpotent; the family member shares a flag with A
    from stcommute.fixtures import A1

    B = sample_B(analyze(A1), 5, 10)
    assert property_l(A1, B).verdict == ("HOLDS_NUMERICALLY" if st_test(A1, B).is_st else "FAILS")
