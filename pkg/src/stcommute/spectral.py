"""Pencil characteristic polynomials, numeric roots and property L.

Property L of a pair ``(A, B)``: for one fixed ordering of the eigenvalues
``lam`` of ``A`` and ``mu`` of ``B``, the eigenvalues of ``xA + yB`` are
``x*lam[j] + y*mu[j]`` for all scalars ``x, y``.  The numeric check samples
``(x, y)`` and holds a single pairing fixed across every sample; the exact
check applies when both spectra lie in Q(i).
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NoConvergence
from .matrix import RMatrix, charpoly
from .multipoly import MPoly
from .scalar import GaussianRational, to_complex_float

__all__ = [
    "PencilPoly",
    "PropertyLReport",
    "ExactLCertificate",
    "pencil_charpoly",
    "roots",
    "squarefree_decomposition",
    "exact_roots",
    "property_l",
    "property_l_exact_refutation",
    "DEFAULT_TOL",
    "DEFAULT_SAMPLES",
]

DEFAULT_TOL = 1e-8
DEFAULT_SAMPLES = 12
FIXED_PROBES = ((1, 0), (0, 1), (1, 1), (1, -1))
_EXHAUSTIVE_MAX_N = 6
_EXACT_ROOT_NORM_LIMIT = 10 ** 12

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


# -- exact univariate polynomials over Q(i), coefficient lists c0..cn ---------


def _trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _monic(p: list) -> list:
    lead = p[-1].inverse()
    return [c * lead for c in p]


def _derivative(p: list) -> list:
    return _trim([p[k] * k for k in range(1, len(p))])


def _divmod(p: list, d: list) -> tuple[list, list]:
    p = _trim(p)
    d = _trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(d):
        return [], p
    inv = d[-1].inverse()
    q = [_ZERO] * (len(p) - len(d) + 1)
    r = list(p)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(d) - 1] * inv
        q[k] = c
        if c:
            for j, dj in enumerate(d):
                r[k + j] = r[k + j] - c * dj
    return _trim(q), _trim(r[:len(d) - 1])


def _gcd(p: list, q: list) -> list:
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, _divmod(p, q)[1]
    return _monic(p) if p else p


def squarefree_decomposition(coeffs: Sequence) -> list[tuple[list, int]]:
    """Yun's algorithm: ``p = prod(f_k ** k)`` with square-free, coprime ``f_k``.

    Returns ``[(f_k, k), ...]`` for the non-constant factors, each monic.
    """
    p = _monic(_trim([GaussianRational.coerce(c) for c in coeffs]))
    if len(p) <= 1:
        return []
    out = []
    dp = _derivative(p)
    a = _gcd(p, dp)
    b = _divmod(p, a)[0]
    c = _divmod(dp, a)[0]
    d = [x - y for x, y in itertools.zip_longest(c, _derivative(b), fillvalue=_ZERO)]
    d = _trim(d)
    k = 1
    while len(b) > 1:
        a = _gcd(b, d) if d else b
        if len(a) > 1:
            out.append((a, k))
        b = _divmod(b, a)[0]
        c = _divmod(d, a)[0] if d else []
        d = _trim([x - y for x, y in itertools.zip_longest(c, _derivative(b), fillvalue=_ZERO)])
        k += 1
    return out


def _horner(coeffs: Sequence[complex], z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _durand_kerner(coeffs: Sequence[complex], max_iter: int) -> list[complex]:
    n = len(coeffs) - 1
    lead = coeffs[-1]
    c = [x / lead for x in coeffs]
    if n == 1:
        return [-c[0]]
    radius = 2 * max(abs(c[n - k]) ** (1.0 / k) for k in range(1, n + 1))
    radius = radius or 1.0
    z = [radius * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]
    for _ in range(max_iter):
        step = 0.0
        for i in range(n):
            denom = 1 + 0j
            for j in range(n):
                if j != i:
                    denom *= z[i] - z[j]
            if denom == 0:
                denom = 1e-300
            delta = _horner(c, z[i]) / denom
            z[i] -= delta
            step = max(step, abs(delta))
        if step < 1e-13 * (1 + max(abs(v) for v in z)):
            break
    else:
        raise NoConvergence(
            "Durand-Kerner did not converge",
            residuals=[abs(_horner(c, v)) for v in z],
        )
    dc = [c[k] * k for k in range(1, n + 1)]
    polished = []
    for v in z:
        dv = _horner(dc, v)
        polished.append(v - _horner(c, v) / dv if dv != 0 else v)
    return polished


def roots(coeffs: Sequence, max_iter: int = 1000) -> list[complex]:
    """All complex roots, with multiplicity, of an exact univariate polynomial.

    Repeated roots are separated exactly by a square-free decomposition before
    the simultaneous (Durand-Kerner) iteration runs on each factor.
    """
    p = _trim([GaussianRational.coerce(c) for c in coeffs])
    if len(p) < 2:
        raise ValueError("roots needs a polynomial of degree >= 1")
    out = []
    for factor, mult in squarefree_decomposition(p):
        fc = [to_complex_float(c) for c in factor]
        out.extend(_durand_kerner(fc, max_iter) * mult)
    return out


# -- exact roots in Q(i) -------------------------------------------------------


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _gaussian_divisor_candidates(c: GaussianRational):
    """Gaussian integers g with norm(g) dividing norm(c), for integral c."""
    norm = int(c.norm())
    for d in _divisors(norm):
        a = 0
        while a * a <= d:
            b2 = d - a * a
            b = math.isqrt(b2)
            if b * b == b2:
                for sa in {a, -a}:
                    for sb in {b, -b}:
                        yield GaussianRational(sa, sb)
            a += 1


def _eval(p: Sequence[GaussianRational], z: GaussianRational) -> GaussianRational:
    acc = _ZERO
    for c in reversed(p):
        acc = acc * z + c
    return acc


def exact_roots(coeffs: Sequence) -> list[GaussianRational] | None:
    """Roots with multiplicity if the polynomial splits over Q(i), else None.

    None is also returned when the candidate search would be too large.
    """
    p = _monic(_trim([GaussianRational.coerce(c) for c in coeffs]))
    found = []
    while len(p) > 1 and not p[0]:
        found.append(_ZERO)
        p = p[1:]
    n = len(p) - 1
    if n == 0:
        return found
    den = 1
    for c in p:
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    # q(s) = den^n p(s/den) is monic with Gaussian-integer coefficients
    q = [c * den ** (n - k) for k, c in enumerate(p)]
    if int(q[0].norm()) > _EXACT_ROOT_NORM_LIMIT:
        return None
    seen = set()
    for g in _gaussian_divisor_candidates(q[0]):
        if g in seen:
            continue
        seen.add(g)
        while len(q) > 1 and not _eval(q, g):
            found.append(g / den)
            q, _ = _divmod(q, [-g, _ONE])
        if len(q) == 1:
            break
    if len(q) > 1:
        return None
    return found


# -- pencil ----------------------------------------------------------------------


@dataclass(frozen=True)
class PencilPoly:
    """``det(t I - (xA + yB))`` as coefficients of ``t^0 .. t^n`` in Q(i)[x, y]."""

    n: int
    coeffs: tuple[MPoly, ...]

    def specialize(self, x, y) -> list[GaussianRational]:
        x, y = GaussianRational.coerce(x), GaussianRational.coerce(y)
        return [c(x, y) for c in self.coeffs]

    def to_mpoly(self) -> MPoly:
        """Trivariate polynomial in ``(x, y, t)``."""
        terms = {}
        for k, c in enumerate(self.coeffs):
            for exps, v in c.terms():
                terms[(*exps, k)] = v
        return MPoly(3, terms)

    def substitute(self, x=None, y=None) -> MPoly:
        """Fix ``x`` and/or ``y``; remaining variables keep their order, ``t`` last."""
        assignment = {}
        if x is not None:
            assignment[0] = x
        if y is not None:
            assignment[1] = y
        return self.to_mpoly().partial_eval(assignment)

    def format(self) -> str:
        return self.to_mpoly().format(["x", "y", "t"])


def pencil_charpoly(A: RMatrix, B: RMatrix) -> PencilPoly:
    if not (A.is_square and B.is_square) or A.rows != B.rows:
        raise DimensionMismatch(f"pencil needs square matrices of equal size, "
                                f"got {A.shape} and {B.shape}")
    x, y = MPoly.generators(2)
    M = RMatrix(A.rows, A.cols, [x * a + y * b for a, b in zip(A.entries, B.entries)])
    return PencilPoly(A.rows, tuple(charpoly(M)))


# -- numeric property L ----------------------------------------------------------


@dataclass(frozen=True)
class PropertyLReport:
    verdict: str
    pairing: tuple[int, ...] | None
    samples: tuple[tuple[Fraction, Fraction, float], ...]
    tolerance: float
    witness: tuple[Fraction, Fraction, float] | None = None
    eigenvalues_a: tuple[complex, ...] = field(default=())
    eigenvalues_b: tuple[complex, ...] = field(default=())

    @property
    def holds(self) -> bool:
        return self.verdict == "HOLDS_NUMERICALLY"

    def to_dict(self) -> dict:
        def sample(s):
            return {"x": str(s[0]), "y": str(s[1]), "max_residual": s[2]}

        return {
            "verdict": self.verdict,
            "pairing": list(self.pairing) if self.pairing is not None else None,
            "tolerance": self.tolerance,
            "samples": [sample(s) for s in self.samples],
            "witness": sample(self.witness) if self.witness is not None else None,
            "eigenvalues_a": [[v.real, v.imag] for v in self.eigenvalues_a],
            "eigenvalues_b": [[v.real, v.imag] for v in self.eigenvalues_b],
        }


def _bottleneck(u: Sequence[complex], v: Sequence[complex]) -> float:
    """Smallest r such that a perfect matching of u to v uses only pairs within r."""
    n = len(u)
    dist = [[abs(a - b) for b in v] for a in u]
    thresholds = sorted({d for row in dist for d in row})

    def feasible(r: float) -> bool:
        match = [-1] * n

        def augment(i, seen):
            for j in range(n):
                if dist[i][j] <= r and not seen[j]:
                    seen[j] = True
                    if match[j] < 0 or augment(match[j], seen):
                        match[j] = i
                        return True
            return False

        return all(augment(i, [False] * n) for i in range(n))

    lo, hi = 0, len(thresholds) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(thresholds[mid]):
            hi = mid
        else:
            lo = mid + 1
    return thresholds[lo]


def _residual(nu, lam, mu, pairing, x: complex, y: complex) -> float:
    predicted = [x * lam[j] + y * mu[pairing[j]] for j in range(len(lam))]
    return _bottleneck(nu, predicted)


def _candidate_pairings(nu, lam, mu, x, y):
    n = len(lam)
    if n <= _EXHAUSTIVE_MAX_N:
        return sorted(set(itertools.permutations(range(n))))
    from scipy.optimize import linear_sum_assignment

    cost = [[min(abs(v - (x * lam[j] + y * mu[m])) for v in nu) for m in range(n)]
            for j in range(n)]
    _, cols = linear_sum_assignment(cost)
    return [tuple(int(c) for c in cols)]


def _sample_points(num_samples: int, seed: int) -> list[tuple[Fraction, Fraction]]:
    """First a random generic point, then the fixed probes, then more random points."""
    rng = random.Random(seed)

    def rand_point():
        while True:
            x = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
            y = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
            if x and y:
                return x, y

    n_random = max(1, num_samples - len(FIXED_PROBES))
    n_probes = min(len(FIXED_PROBES), num_samples - 1)
    randoms = [rand_point() for _ in range(n_random)]
    probes = [(Fraction(a), Fraction(b)) for a, b in FIXED_PROBES[:n_probes]]
    return randoms[:1] + probes + randoms[1:]


def property_l(A: RMatrix, B: RMatrix, num_samples: int = DEFAULT_SAMPLES,
               tol: float = DEFAULT_TOL, seed: int = 42) -> PropertyLReport:
    """Numeric property-L decision with one pairing shared by every sample.

    The pairing is chosen on a generic first sample: every pairing whose
    residual is within ``tol`` there stays a candidate and is then checked on
    the remaining samples.  The verdict holds if some candidate survives all.
    """
    pencil = pencil_charpoly(A, B)
    lam = roots(charpoly(A))
    mu = roots(charpoly(B))
    points = _sample_points(num_samples, seed)

    candidates = None
    samples = []
    for x, y in points:
        nu = roots(pencil.specialize(x, y))
        xf, yf = float(x), float(y)
        if candidates is None:
            candidates = _candidate_pairings(nu, lam, mu, xf, yf)
        scored = [(_residual(nu, lam, mu, p, xf, yf), p) for p in candidates]
        best = min(r for r, _ in scored)
        samples.append((x, y, best))
        candidates = [p for r, p in scored if r <= tol]
        if not candidates:
            return PropertyLReport("FAILS", None, tuple(samples), tol, (x, y, best),
                                   tuple(lam), tuple(mu))
    return PropertyLReport("HOLDS_NUMERICALLY", candidates[0], tuple(samples), tol, None,
                           tuple(lam), tuple(mu))


# -- exact property L --------------------------------------------------------------


@dataclass(frozen=True)
class ExactLCertificate:
    """Exact outcome when both spectra lie in Q(i).

    ``holds`` with ``pairing`` when the pencil factors as predicted; otherwise
    ``mismatch = (power of t, pencil coefficient, predicted coefficient)`` for
    the identity pairing.
    """

    holds: bool
    eigenvalues_a: tuple[GaussianRational, ...]
    eigenvalues_b: tuple[GaussianRational, ...]
    pairing: tuple[int, ...] | None = None
    mismatch: tuple[int, MPoly, MPoly] | None = None

    def to_dict(self) -> dict:
        out = {
            "holds": self.holds,
            "eigenvalues_a": [str(v) for v in self.eigenvalues_a],
            "eigenvalues_b": [str(v) for v in self.eigenvalues_b],
            "pairing": list(self.pairing) if self.pairing is not None else None,
            "mismatch": None,
        }
        if self.mismatch is not None:
            k, have, want = self.mismatch
            names = ["x", "y"]
            out["mismatch"] = {"t_power": k, "pencil": have.format(names),
                               "predicted": want.format(names)}
        return out


def _predicted_pencil(lam, mu, pairing) -> list[MPoly]:
    x, y = MPoly.generators(2)
    poly = [MPoly.constant(2, 1)]
    for j, p in enumerate(pairing):
        root = x * lam[j] + y * mu[p]
        nxt = [MPoly.constant(2, 0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - c * root
        poly = nxt
    return poly


def property_l_exact_refutation(A: RMatrix, B: RMatrix) -> ExactLCertificate | None:
    """Exact property-L decision when both characteristic polynomials split over Q(i).

    Returns None when a spectrum is not in Q(i); use :func:`property_l` then.
    """
    pencil = pencil_charpoly(A, B)
    lam = exact_roots(charpoly(A))
    mu = exact_roots(charpoly(B))
    if lam is None or mu is None:
        return None
    first_mismatch = None
    for pairing in sorted(set(itertools.permutations(range(len(lam))))):
        predicted = _predicted_pencil(lam, mu, pairing)
        diff = next((k for k in range(pencil.n + 1) if pencil.coeffs[k] != predicted[k]), None)
        if diff is None:
            return ExactLCertificate(True, tuple(lam), tuple(mu), pairing)
        if first_mismatch is None:
            first_mismatch = (diff, pencil.coeffs[diff], predicted[diff])
    return ExactLCertificate(False, tuple(lam), tuple(mu), None, first_mismatch)
