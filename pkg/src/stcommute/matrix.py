"""Dense matrices over a commutative ring containing Q.

Entries are :class:`GaussianRational` or :class:`MPoly`; the generic routines
only use ``+``, ``-``, ``*`` and division by integers, so the same code serves
both.  Elimination-based routines (kernel, rank, inverse, determinant, solve)
require field entries and are only meant for Gaussian rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatch, NotNilpotent, SingularMatrix
from .multipoly import MPoly
from .scalar import GaussianRational

__all__ = [
    "RMatrix",
    "KernelBasis",
    "mat_arith",
    "commutator",
    "trace",
    "kron",
    "charpoly",
    "rref",
    "rref_kernel",
    "rank",
    "solve",
    "det",
    "inverse",
    "is_nilpotent",
    "exp_nilpotent",
    "direct_sum",
    "matrix_unit",
]


def _coerce_entry(value):
    if isinstance(value, (GaussianRational, MPoly)):
        return value
    return GaussianRational.coerce(value)


class RMatrix:
    """Immutable ``rows x cols`` matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(_coerce_entry(e) for e in entries)
        if rows <= 0 or cols <= 0:
            raise DimensionMismatch(f"matrix dimensions must be positive, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> RMatrix:
        obj = cls.__new__(cls)
        obj.rows, obj.cols, obj.entries = rows, cols, entries
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> RMatrix:
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("rows must be non-empty and of equal length")
        return cls(len(rows), len(rows[0]), [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, zero=None) -> RMatrix:
        cols = rows if cols is None else cols
        z = GaussianRational(0) if zero is None else zero
        return cls._raw(rows, cols, (z,) * (rows * cols))

    @classmethod
    def identity(cls, n: int, one=None) -> RMatrix:
        one = GaussianRational(1) if one is None else one
        z = one * 0
        return cls._raw(n, n, tuple(one if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence) -> RMatrix:
        values = [_coerce_entry(v) for v in values]
        n = len(values)
        z = values[0] * 0
        return cls._raw(n, n, tuple(values[i] if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def from_vec(cls, vec: Sequence, rows: int, cols: int | None = None) -> RMatrix:
        """Inverse of :meth:`vec` (row-major)."""
        return cls(rows, rows if cols is None else cols, vec)

    # -- structure ----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def zero(self):
        return self.entries[0] * 0

    @property
    def one(self):
        return self.zero + 1

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def vec(self) -> tuple:
        """Row-major vectorization."""
        return self.entries

    def map(self, fn: Callable) -> RMatrix:
        return RMatrix._raw(self.rows, self.cols, tuple(fn(e) for e in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_real(self) -> bool:
        return all(isinstance(e, GaussianRational) and e.is_real() for e in self.entries)

    def is_upper_triangular(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(min(i, self.cols)))

    def transpose(self) -> RMatrix:
        r, c = self.rows, self.cols
        e = self.entries
        return RMatrix._raw(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)))

    @property
    def T(self) -> RMatrix:
        return self.transpose()

    def _require_square(self, what: str):
        if self.rows != self.cols:
            raise DimensionMismatch(f"{what} needs a square matrix, got {self.rows}x{self.cols}")

    # -- arithmetic ------------------------------------------------------------

    def _same_shape(self, other: RMatrix):
        if not isinstance(other, RMatrix):
            raise TypeError(f"expected RMatrix, got {type(other).__name__}")
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        self._same_shape(other)
        return RMatrix._raw(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        self._same_shape(other)
        return RMatrix._raw(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self):
        return RMatrix._raw(self.rows, self.cols, tuple(-a for a in self.entries))

    def __matmul__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        bcols = [b[j::p] for j in range(p)]
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            nz = [(k, x) for k, x in enumerate(arow) if x]
            for j in range(p):
                col = bcols[j]
                acc = None
                for k, x in nz:
                    y = col[k]
                    if y:
                        acc = x * y if acc is None else acc + x * y
                out.append(self.zero if acc is None else acc)
        return RMatrix._raw(n, p, tuple(out))

    def __mul__(self, other):
        if isinstance(other, RMatrix):
            return self @ other
        return RMatrix._raw(self.rows, self.cols, tuple(e * other for e in self.entries))

    def __rmul__(self, other):
        if isinstance(other, RMatrix):
            return NotImplemented
        return RMatrix._raw(self.rows, self.cols, tuple(other * e for e in self.entries))

    def __truediv__(self, other):
        return RMatrix._raw(self.rows, self.cols, tuple(e / other for e in self.entries))

    def __pow__(self, k: int):
        self._require_square("power")
        if k < 0:
            return inverse(self) ** (-k)
        result = RMatrix.identity(self.rows, self.one)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __reduce__(self):
        return (RMatrix._raw, (self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"RMatrix([{body}])"

    # -- convenience methods ------------------------------------------------

    def trace(self):
        return trace(self)

    def charpoly(self) -> list:
        return charpoly(self)


def matrix_unit(n: int, i: int, j: int, cols: int | None = None) -> RMatrix:
    """The matrix with a single 1 at zero-based position ``(i, j)``."""
    cols = n if cols is None else cols
    one, z = GaussianRational(1), GaussianRational(0)
    return RMatrix._raw(n, cols, tuple(one if (r, c) == (i, j) else z
                                       for r in range(n) for c in range(cols)))


def mat_arith(X: RMatrix, Y: RMatrix, op: str) -> RMatrix:
    if op == "add":
        return X + Y
    if op == "sub":
        return X - Y
    if op == "mul":
        return X @ Y
    raise ValueError(f"unknown operation {op!r}")


def commutator(A: RMatrix, B: RMatrix) -> RMatrix:
    """``AB - BA``."""
    A._require_square("commutator")
    B._require_square("commutator")
    if A.rows != B.rows:
        raise DimensionMismatch(f"sizes {A.rows} and {B.rows} differ")
    return A @ B - B @ A


def trace(X: RMatrix):
    X._require_square("trace")
    total = X.zero
    for i in range(X.rows):
        total = total + X.entries[i * X.cols + i]
    return total


def kron(X: RMatrix, Y: RMatrix) -> RMatrix:
    """Kronecker product: block ``(i, j)`` equals ``X[i, j] * Y``."""
    rx, cx, ry, cy = X.rows, X.cols, Y.rows, Y.cols
    out = []
    for i in range(rx):
        for k in range(ry):
            yrow = Y.row(k)
            for j in range(cx):
                x = X[i, j]
                out.extend(x * y for y in yrow)
    return RMatrix._raw(rx * ry, cx * cy, tuple(out))


def direct_sum(*blocks: RMatrix) -> RMatrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    z = blocks[0].zero
    rows = [[z] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return RMatrix._raw(n, m, tuple(e for r in rows for e in r))


def charpoly(X: RMatrix) -> list:
    """Coefficients ``[c0, ..., cn]`` of ``det(tI - X)``, with ``cn = 1``.

    Faddeev-LeVerrier: only ring operations and division by integers.
    """
    X._require_square("charpoly")
    n = X.rows
    one = X.one
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    ident = RMatrix.identity(n, one)
    M = RMatrix.zeros(n, n, X.zero)
    for k in range(1, n + 1):
        M = X @ M + ident * coeffs[n - k + 1]
        coeffs[n - k] = -trace(X @ M) / k
    return coeffs


# -- elimination over Q(i) ---------------------------------------------------


def rref(X: RMatrix) -> tuple[list[list[GaussianRational]], list[int]]:
    """Reduced row-echelon form and pivot columns.

    Pivots on the first nonzero entry found in each column; arithmetic is
    exact so no magnitude pivoting is needed.
    """
    m = X.to_rows()
    nrows, ncols = X.rows, X.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [e * inv for e in m[r]]
        pivot_row = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [a - f * b if b else a for a, b in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m, pivots


@dataclass(frozen=True)
class KernelBasis:
    """Canonical basis of a kernel, itself in reduced row-echelon form."""

    ambient_dim: int
    vectors: tuple[tuple[GaussianRational, ...], ...]
    rank_of_operator: int
    pivots: tuple[int, ...] = field(default=())

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)


def rank(X: RMatrix) -> int:
    return len(rref(X)[1])


def rref_kernel(X: RMatrix) -> KernelBasis:
    """Basis of ``{v : X v = 0}`` in canonical reduced row-echelon form."""
    reduced, pivots = rref(X)
    ncols = X.cols
    zero, one = GaussianRational(0), GaussianRational(1)
    free = [c for c in range(ncols) if c not in set(pivots)]
    raw = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -reduced[r][f]
        raw.append(v)
    if not raw:
        return KernelBasis(ncols, (), len(pivots), ())
    # Re-reduce so the basis depends only on the subspace.
    basis_rows, basis_pivots = rref(RMatrix.from_rows(raw))
    vectors = tuple(tuple(row) for row in basis_rows[:len(basis_pivots)])
    return KernelBasis(ncols, vectors, len(pivots), tuple(basis_pivots))


def solve(M: RMatrix, b: Sequence) -> list[GaussianRational] | None:
    """A particular solution of ``M x = b`` (free variables set to 0), or None."""
    b = [GaussianRational.coerce(v) for v in b]
    if len(b) != M.rows:
        raise DimensionMismatch(f"right-hand side has {len(b)} entries, expected {M.rows}")
    aug = RMatrix(M.rows, M.cols + 1, [e for i in range(M.rows) for e in (*M.row(i), b[i])])
    reduced, pivots = rref(aug)
    if M.cols in pivots:
        return None
    x = [GaussianRational(0)] * M.cols
    for r, p in enumerate(pivots):
        x[p] = reduced[r][M.cols]
    return x


def det(X: RMatrix) -> GaussianRational:
    X._require_square("det")
    m = X.to_rows()
    n = X.rows
    result = GaussianRational(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return GaussianRational(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            f = m[i][c]
            if f:
                f = f * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def inverse(X: RMatrix) -> RMatrix:
    X._require_square("inverse")
    n = X.rows
    one, zero = GaussianRational(1), GaussianRational(0)
    aug = RMatrix(n, 2 * n, [e for i in range(n)
                             for e in (*X.row(i), *(one if i == j else zero for j in range(n)))])
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return RMatrix(n, n, [e for r in reduced for e in r[n:]])


def is_nilpotent(X: RMatrix) -> bool:
    """``X**n == 0``, decided by repeated squaring."""
    X._require_square("is_nilpotent")
    P, e = X, 1
    while e < X.rows:
        if P.is_zero():
            return True
        P = P @ P
        e *= 2
    return P.is_zero()


def exp_nilpotent(X: RMatrix, t=1) -> RMatrix:
    """Exact ``exp(tX)`` for nilpotent ``X`` as the finite sum of ``(tX)^k / k!``."""
    if not is_nilpotent(X):
        raise NotNilpotent("exp_nilpotent needs a nilpotent matrix")
    n = X.rows
    tX = X * GaussianRational.coerce(t)
    term = RMatrix.identity(n, X.one)
    total = term
    for k in range(1, n):
        term = term @ tX
        if term.is_zero():
            break
        total = total + term / factorial(k)
    return total


def as_fraction_matrix(X: RMatrix) -> list[list[Fraction]]:
    """Real parts as Fractions; raises if any entry has an imaginary part."""
    if not X.is_real():
        raise ValueError("matrix has non-real entries")
    return [[e.re for e in X.row(i)] for i in range(X.rows)]
