"""Named example matrices and random generators used by scenarios and tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .matrix import RMatrix, direct_sum, inverse, commutator

# A0 = E12 (3x3), the derogatory nilpotent matrix of the n = 3 counterexample.
A0 = RMatrix.from_rows([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
# B0 = E23 + E31, the partner of A0.
B0 = RMatrix.from_rows([[0, 0, 0], [0, 0, 1], [1, 0, 0]])
C0 = commutator(A0, B0)
J2 = RMatrix.from_rows([[0, 1], [0, 0]])
# A1 = diag(J2, J2), the n = 4 positive case.
A1 = direct_sum(J2, J2)

NAMED = {"A0": A0, "B0": B0, "C0": C0, "J2": J2, "A1": A1}


def jordan_block(n: int, eigenvalue=0) -> RMatrix:
    return RMatrix(n, n, [eigenvalue if i == j else (1 if j == i + 1 else 0)
                          for i in range(n) for j in range(n)])


def zero_padded(M: RMatrix, n: int) -> RMatrix:
    """``M`` direct-summed with a zero block up to size ``n``."""
    if n == M.rows:
        return M
    return direct_sum(M, RMatrix.zeros(n - M.rows))


def companion(coeffs: Sequence) -> RMatrix:
    """Companion matrix of the monic polynomial ``t^n + c[n-1] t^(n-1) + ... + c[0]``.

    ``coeffs`` lists ``c[0] .. c[n-1]`` (the leading 1 is implicit).
    """
    n = len(coeffs)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -Fraction(coeffs[i])
    return RMatrix.from_rows(rows)


def poly_from_roots(roots: Sequence) -> list:
    """Coefficients ``c[0] .. c[n-1]`` of the monic polynomial with the given roots."""
    poly = [Fraction(1)]
    for r in roots:
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= c * r
        poly = nxt
    return poly[:-1]


def random_rational_matrix(rng: random.Random, rows: int, cols: int | None = None,
                           bound: int = 5, max_den: int = 3) -> RMatrix:
    cols = rows if cols is None else cols
    return RMatrix(rows, cols, [Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))
                                for _ in range(rows * cols)])


def random_unimodular(rng: random.Random, n: int, bound: int = 2) -> RMatrix:
    """Product of random unit lower and unit upper triangular integer matrices."""
    lower = RMatrix(n, n, [1 if i == j else (rng.randint(-bound, bound) if i > j else 0)
                           for i in range(n) for j in range(n)])
    upper = RMatrix(n, n, [1 if i == j else (rng.randint(-bound, bound) if i < j else 0)
                           for i in range(n) for j in range(n)])
    return lower @ upper


def random_structured_matrix(rng: random.Random, n: int) -> RMatrix:
    """A random conjugate of a Jordan matrix with repeated small eigenvalues.

    Repeated eigenvalues make ker(phi) strictly larger than the commutant, so
    sampled partners ``B`` usually have a nonzero commutator.
    """
    blocks = []
    left = n
    eigen = rng.choice([0, 1, -1, 2])
    while left:
        size = rng.randint(1, left)
        if rng.random() < 0.3:
            eigen = rng.choice([0, 1, -1, 2])
        blocks.append(jordan_block(size, eigen))
        left -= size
    J = direct_sum(*blocks)
    P = random_unimodular(rng, n)
    return P @ J @ inverse(P)


def random_companion(rng: random.Random, n: int) -> RMatrix:
    """Companion matrix of a random product of linear factors, repeats allowed."""
    roots = []
    while len(roots) < n:
        r = rng.randint(-2, 2)
        roots.extend([r] * rng.randint(1, n - len(roots)))
    return companion(poly_from_roots(roots))
