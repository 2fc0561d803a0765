"""Sylvester operators and the solution space of A(AB - BA) = (AB - BA)A.

For a fixed ``A`` the condition is linear in ``B``: it says ``B`` lies in the
kernel of ``phi = psi**2`` where ``psi`` represents ``X -> AX - XA``.
Vectorization is row-major throughout, which makes ``psi`` literally
``kron(A, I) - kron(I, A.T)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, HypothesisViolated
from .matrix import (
    KernelBasis,
    RMatrix,
    charpoly,
    commutator,
    det,
    exp_nilpotent,
    inverse,
    is_nilpotent,
    kron,
    rank,
    rref_kernel,
    solve,
)
from .multipoly import MPoly
from .scalar import GaussianRational

__all__ = [
    "SylvesterReport",
    "Prop3Certificates",
    "sylvester_psi",
    "sylvester_phi",
    "analyze",
    "combine_kernel",
    "sample_B",
    "symbolic_B",
    "commutes_with_commutator",
    "minimal_polynomial_degree",
    "is_non_derogatory",
    "in_polynomial_span",
    "shift_to_invertible",
    "prop3_certificates",
]


def _square(A: RMatrix, what: str):
    if not A.is_square:
        raise DimensionMismatch(f"{what} needs a square matrix, got {A.rows}x{A.cols}")


def _same_size(A: RMatrix, B: RMatrix, what: str):
    _square(A, what)
    _square(B, what)
    if A.rows != B.rows:
        raise DimensionMismatch(f"{what}: sizes {A.rows} and {B.rows} differ")


def sylvester_psi(A: RMatrix) -> RMatrix:
    """The n^2 x n^2 matrix of ``X -> AX - XA``."""
    _square(A, "sylvester_psi")
    ident = RMatrix.identity(A.rows)
    return kron(A, ident) - kron(ident, A.transpose())


def sylvester_phi(A: RMatrix) -> RMatrix:
    """The matrix of ``X -> A^2 X + X A^2 - 2 A X A``, computed as ``psi**2``."""
    psi = sylvester_psi(A)
    return psi @ psi


@dataclass(frozen=True)
class SylvesterReport:
    """Kernel data of psi and phi for one matrix ``A``.

    ``zero_pattern`` holds zero-based ``(row, col)`` positions that vanish in
    every element of ker(phi).
    """

    n: int
    dim_ker_psi: int
    dim_ker_psi2: int
    index: Fraction
    kernel_basis_psi2: KernelBasis
    zero_pattern: frozenset

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim_ker_psi": self.dim_ker_psi,
            "dim_ker_psi2": self.dim_ker_psi2,
            "index": str(self.index),
            "zero_pattern": sorted([i + 1, j + 1] for i, j in self.zero_pattern),
            "kernel_basis_psi2": [[str(e) for e in v] for v in self.kernel_basis_psi2.vectors],
        }


def analyze(A: RMatrix) -> SylvesterReport:
    _square(A, "analyze")
    n = A.rows
    psi = sylvester_psi(A)
    dim_psi = n * n - rank(psi)
    basis = rref_kernel(psi @ psi)
    dim_psi2 = basis.dim
    zero_pattern = frozenset(
        divmod(p, n) for p in range(n * n) if all(not v[p] for v in basis.vectors)
    )
    return SylvesterReport(
        n=n,
        dim_ker_psi=dim_psi,
        dim_ker_psi2=dim_psi2,
        index=Fraction(dim_psi2 - dim_psi, n * n),
        kernel_basis_psi2=basis,
        zero_pattern=zero_pattern,
    )


def combine_kernel(report: SylvesterReport, coeffs: Sequence) -> RMatrix:
    """``sum(coeffs[k] * basis[k])`` reshaped to an n x n matrix."""
    vectors = report.kernel_basis_psi2.vectors
    if len(coeffs) != len(vectors):
        raise DimensionMismatch(f"{len(coeffs)} coefficients for {len(vectors)} basis vectors")
    n = report.n
    total = [GaussianRational(0)] * (n * n)
    for c, v in zip(coeffs, vectors):
        c = GaussianRational.coerce(c)
        if c:
            total = [t + c * e for t, e in zip(total, v)]
    return RMatrix(n, n, total)


def sample_B(report: SylvesterReport, seed: int, coeff_bound: int = 10) -> RMatrix:
    """Random integer combination of the ker(phi) basis, reproducible from ``seed``."""
    rng = random.Random(seed)
    coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in report.kernel_basis_psi2.vectors]
    return combine_kernel(report, coeffs)


def symbolic_B(report: SylvesterReport) -> RMatrix:
    """Generic element ``sum(x_k * basis_k)`` of ker(phi) over ``dim_ker_psi2`` variables."""
    d = report.dim_ker_psi2
    n = report.n
    entries = []
    for p in range(n * n):
        terms = {}
        for k, v in enumerate(report.kernel_basis_psi2.vectors):
            if v[p]:
                exps = [0] * d
                exps[k] = 1
                terms[tuple(exps)] = v[p]
        entries.append(MPoly(d, terms))
    return RMatrix(n, n, entries)


def commutes_with_commutator(A: RMatrix, B: RMatrix) -> bool:
    _same_size(A, B, "commutes_with_commutator")
    C = commutator(A, B)
    return A @ C == C @ A


def _power_vectors(A: RMatrix, count: int) -> list[tuple]:
    P = RMatrix.identity(A.rows)
    out = []
    for _ in range(count):
        out.append(P.vec())
        P = P @ A
    return out


def minimal_polynomial_degree(A: RMatrix) -> int:
    """Smallest k with vec(A^k) in the span of vec(I), ..., vec(A^(k-1))."""
    _square(A, "minimal_polynomial_degree")
    n = A.rows
    vecs = _power_vectors(A, n + 1)
    for k in range(1, n + 1):
        M = RMatrix(k + 1, n * n, [e for v in vecs[:k + 1] for e in v])
        if rank(M) <= k:
            return k
    return n


def is_non_derogatory(A: RMatrix) -> bool:
    return minimal_polynomial_degree(A) == A.rows


def in_polynomial_span(A: RMatrix, X: RMatrix) -> list[GaussianRational] | None:
    """Coefficients ``c`` with ``X = sum(c[k] * A**k, k < n)``, or None."""
    _same_size(A, X, "in_polynomial_span")
    n = A.rows
    vecs = _power_vectors(A, n)
    # columns are vec(A^k)
    M = RMatrix(n * n, n, [vecs[k][p] for p in range(n * n) for k in range(n)])
    return solve(M, X.vec())


def _first_invertible_shift(X: RMatrix) -> int:
    n = X.rows
    ident = RMatrix.identity(n)
    shift = 0
    while True:
        if det(X + ident * shift):
            return shift
        shift += 1


def shift_to_invertible(A: RMatrix, B: RMatrix):
    """Return ``(A + lam*I, B + mu*I, lam, mu)`` with the smallest invertible shifts.

    The commutator is unchanged by scalar shifts.
    """
    _same_size(A, B, "shift_to_invertible")
    lam = _first_invertible_shift(A)
    mu = _first_invertible_shift(B)
    ident = RMatrix.identity(A.rows)
    return A + ident * lam, B + ident * mu, lam, mu


@dataclass(frozen=True)
class Prop3Certificates:
    c_nilpotent: bool
    a_inv_b_inv_c_nilpotent: bool
    b_inv_a_inv_c_nilpotent: bool
    b_inv_c_nilpotent: bool
    spectrum_invariant: bool
    conjugation_identity: bool | None
    shift: tuple[int, int]

    @property
    def passed(self) -> bool:
        return all(v is not False for v in (
            self.c_nilpotent,
            self.a_inv_b_inv_c_nilpotent,
            self.b_inv_a_inv_c_nilpotent,
            self.b_inv_c_nilpotent,
            self.spectrum_invariant,
            self.conjugation_identity,
        ))

    def to_dict(self) -> dict:
        return {
            "C_nilpotent": self.c_nilpotent,
            "Ainv_Binv_C_nilpotent": self.a_inv_b_inv_c_nilpotent,
            "Binv_Ainv_C_nilpotent": self.b_inv_a_inv_c_nilpotent,
            "Binv_C_nilpotent": self.b_inv_c_nilpotent,
            "charpoly_B_plus_tC_constant": self.spectrum_invariant,
            "conjugation_identity": self.conjugation_identity,
            "shift": list(self.shift),
            "passed": self.passed,
        }


_CONJUGATION_TS = (GaussianRational(1), GaussianRational(-2), GaussianRational(Fraction(1, 3)))


def prop3_certificates(A: RMatrix, B: RMatrix) -> Prop3Certificates:
    """Exact nilpotency and spectral certificates for a pair with [A, [A, B]] = 0."""
    if not commutes_with_commutator(A, B):
        raise HypothesisViolated("A does not commute with AB - BA")
    n = A.rows
    C = commutator(A, B)
    A1, B1, lam, mu = shift_to_invertible(A, B)
    Ai, Bi = inverse(A1), inverse(B1)

    # charpoly(B + tC) has coefficients of degree <= n in t, so n+1 points decide it.
    base = charpoly(B)
    spectrum_ok = all(charpoly(B + C * t) == base for t in range(1, n + 2))

    conj = None
    if is_nilpotent(A):
        conj = all(
            exp_nilpotent(A, t) @ B @ exp_nilpotent(A, -t) == B + C * t
            for t in _CONJUGATION_TS
        )
    return Prop3Certificates(
        c_nilpotent=is_nilpotent(C),
        a_inv_b_inv_c_nilpotent=is_nilpotent(Ai @ Bi @ C),
        b_inv_a_inv_c_nilpotent=is_nilpotent(Bi @ Ai @ C),
        b_inv_c_nilpotent=is_nilpotent(Bi @ C),
        spectrum_invariant=spectrum_ok,
        conjugation_identity=conj,
        shift=(lam, mu),
    )
