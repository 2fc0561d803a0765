"""Finite simultaneous-triangularization test by word traces.

A pair ``(A, B)`` of n x n matrices is simultaneously triangularizable iff
``trace(U1 ... Uk (AB - BA)) == 0`` for every ``k`` in ``1 .. n^2 - 1`` and
every choice of letters ``Ui`` in ``{A, B}``.

Words are enumerated depth-first over a binary tree whose root is ``C`` and
whose nodes are grown at the left end: the product for ``U w`` is ``U`` times
the stored product for ``w``, so every node costs one matrix multiplication
and the stack holds one product per level.  When a node's product is the zero
matrix every descendant is zero as well, and the whole subtree is counted as
checked without being multiplied out.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterator

import numpy as np

from .commutant import SylvesterReport, sample_B
from .errors import DimensionMismatch, SymbolicBlowup
from .matrix import RMatrix, commutator, trace
from .multipoly import MPoly
from .scalar import GaussianRational

__all__ = [
    "WordId",
    "STReport",
    "DEFAULT_TERM_CEILING",
    "st_test",
    "st_test_symbolic",
    "randomized_st_family",
    "word_traces",
    "naive_word_trace",
    "full_word_count",
]

log = logging.getLogger(__name__)

DEFAULT_TERM_CEILING = 5_000_000
_POLL_EVERY = 512


@dataclass(frozen=True)
class WordId:
    """Letters ``U1 ... Uk`` of the word multiplying ``C`` (leftmost first)."""

    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - {"A", "B"}:
            raise ValueError(f"invalid word {self.letters!r}")

    @property
    def length(self) -> int:
        return len(self.letters)

    def __str__(self):
        return "".join(self.letters) + "*C"


@dataclass(frozen=True)
class STReport:
    verdict: str
    words_checked: int
    max_len: int
    mode: str
    witness: tuple[WordId, object] | None = None
    n: int = 0

    @property
    def is_st(self) -> bool:
        return self.verdict == "ST"

    @property
    def authoritative(self) -> bool:
        """True when the word-length bound is the full ``n^2 - 1``."""
        return self.max_len >= self.n * self.n - 1

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "words_checked": self.words_checked,
            "max_len": self.max_len,
            "mode": self.mode,
            "authoritative": self.authoritative,
            "witness": None,
        }
        if self.witness is not None:
            word, value = self.witness
            out["witness"] = {"word": str(word), "letters": word.letters, "trace": str(value)}
        return out


def full_word_count(max_len: int) -> int:
    """Number of words of length 1..max_len over two letters."""
    return (1 << (max_len + 1)) - 2


# -- backends ----------------------------------------------------------------


def _denominator(M: RMatrix) -> int:
    d = 1
    for e in M.entries:
        d = lcm(d, e.re.denominator, e.im.denominator)
    return d


class _ExactBackend:
    """Gaussian-rational pair rescaled to Gaussian integers.

    ``A`` and ``B`` are multiplied by their common denominators; a trace of
    the rescaled word is a positive multiple of the true trace, so zero tests
    are unaffected and witnesses are rescaled back.  Complex entries use the
    2x2 real block representation ``a + bi -> [[a, -b], [b, a]]``.
    """

    mode = "exact"

    def __init__(self, A: RMatrix, B: RMatrix, max_len: int):
        self.n = A.rows
        self.da = _denominator(A)
        self.db = _denominator(B)
        self.complex = not (A.is_real() and B.is_real())
        ia = self._integerize(A, self.da)
        ib = self._integerize(B, self.db)
        ic = ia @ ib - ib @ ia
        bound = max(1, *(abs(int(x)) for x in (*ia.flat, *ib.flat)))
        cmax = max((abs(int(x)) for x in ic.flat), default=0)
        size = ia.shape[0]
        # worst-case magnitude of any trace at depth up to max_len
        worst = cmax * (size * bound) ** (max_len + 1)
        dtype = np.int64 if worst < 2 ** 62 else object
        self.letters = {"A": ia.astype(dtype), "B": ib.astype(dtype)}
        self.root_product = ic.astype(dtype)

    def _integerize(self, M: RMatrix, d: int) -> np.ndarray:
        n = M.rows
        if not self.complex:
            out = np.empty((n, n), dtype=object)
            for i in range(n):
                for j in range(n):
                    out[i, j] = int(M[i, j].re * d)
            return out
        out = np.zeros((2 * n, 2 * n), dtype=object)
        for i in range(n):
            for j in range(n):
                a, b = int(M[i, j].re * d), int(M[i, j].im * d)
                out[2 * i, 2 * j], out[2 * i, 2 * j + 1] = a, -b
                out[2 * i + 1, 2 * j], out[2 * i + 1, 2 * j + 1] = b, a
        return out

    def root(self):
        return self.root_product

    def mul(self, letter: str, V):
        return self.letters[letter] @ V

    @staticmethod
    def is_zero(V) -> bool:
        return not V.any()

    def trace_is_zero(self, V) -> bool:
        if not self.complex:
            return not V.trace()
        return not V[0::2, 0::2].trace() and not V[1::2, 0::2].trace()

    def trace_value(self, V, word: str) -> GaussianRational:
        if self.complex:
            raw = GaussianRational(int(V[0::2, 0::2].trace()), int(V[1::2, 0::2].trace()))
        else:
            raw = GaussianRational(int(V.trace()))
        scale = self.da ** word.count("A") * self.db ** word.count("B") * self.da * self.db
        return raw / scale


class _SymbolicBackend:
    """Matrices over MPoly; aborts when any entry exceeds ``term_ceiling`` terms."""

    mode = "symbolic"

    def __init__(self, A: RMatrix, B: RMatrix, term_ceiling: int):
        self.n = A.rows
        self.term_ceiling = term_ceiling
        self.letters = {"A": A, "B": B}
        self.root_product = commutator(A, B)

    def root(self):
        return self.root_product

    def mul(self, letter: str, V: RMatrix) -> RMatrix:
        P = self.letters[letter] @ V
        worst = max(len(e) for e in P.entries)
        if worst > self.term_ceiling:
            raise SymbolicBlowup(worst, self.term_ceiling)
        return P

    @staticmethod
    def is_zero(V: RMatrix) -> bool:
        return V.is_zero()

    @staticmethod
    def trace_is_zero(V: RMatrix) -> bool:
        return trace(V).is_zero()

    @staticmethod
    def trace_value(V: RMatrix, word: str):
        return trace(V)


# -- enumeration -------------------------------------------------------------


class _Cancelled(Exception):
    pass


def _walk(backend, root_word: str, root_product, max_len: int, early_exit: bool,
          order: str, cancel=None):
    """Depth-first walk of the subtree rooted at ``root_word``.

    Returns ``(words_checked, witness)``; ``witness`` is ``(letters, trace)``.
    """
    checked = 0
    first_witness = None
    stack = [(root_word, root_product)]
    polled = 0
    first, second = order[0], order[1]
    while stack:
        word, V = stack.pop()
        depth = len(word)
        if depth:
            if backend.is_zero(V):
                # this word and all its extensions up to max_len
                checked += (1 << (max_len - depth + 1)) - 1
                continue
            checked += 1
            if not backend.trace_is_zero(V):
                witness = (word, backend.trace_value(V, word))
                if early_exit:
                    return checked, witness
                if first_witness is None:
                    first_witness = witness
        elif backend.is_zero(V):
            return full_word_count(max_len), None
        if depth < max_len:
            # push the second branch first so the first branch is explored first
            stack.append((second + word, backend.mul(second, V)))
            stack.append((first + word, backend.mul(first, V)))
        polled += 1
        if cancel is not None and polled % _POLL_EVERY == 0 and cancel.is_set():
            raise _Cancelled()
    return checked, first_witness


def _walk_task(backend, root_word, max_len, early_exit, order, cancel):
    V = backend.root()
    for letter in reversed(root_word):
        V = backend.mul(letter, V)
    try:
        checked, witness = _walk(backend, root_word, V, max_len, early_exit, order, cancel)
    except _Cancelled:
        return 0, None, True
    if witness is not None and early_exit and cancel is not None:
        cancel.set()
    return checked, witness, False


def _words_of_length(k: int, order: str) -> list[str]:
    words = [""]
    for _ in range(k):
        words = [w + letter for w in words for letter in order]
    # words are extended at the left; reverse so the sort follows the tree order
    return [w[::-1] for w in words]


def _run(backend, n: int, max_len: int, early_exit: bool, order: str, parallel: int) -> STReport:
    if sorted(order) != ["A", "B"]:
        raise ValueError(f"order must be 'AB' or 'BA', got {order!r}")
    assert backend.trace_is_zero(backend.root()), "trace of a commutator must vanish"
    if max_len <= 0:
        return STReport("ST", 0, max_len, backend.mode, None, n)

    if parallel <= 1 or max_len < 3:
        checked, witness = _walk(backend, "", backend.root(), max_len, early_exit, order)
    else:
        checked, witness = _run_parallel(backend, max_len, early_exit, order, parallel)

    if witness is None:
        return STReport("ST", checked, max_len, backend.mode, None, n)
    letters, value = witness
    return STReport("NOT_ST", checked, max_len, backend.mode, (WordId(letters), value), n)


def _run_parallel(backend, max_len, early_exit, order, workers):
    import multiprocessing

    split = 1
    while (1 << split) < 4 * workers and split < max_len - 1:
        split += 1
    # words shorter than the split depth are handled here, sequentially
    checked, witness = _walk(backend, "", backend.root(), split - 1, early_exit, order)
    if witness is not None and early_exit:
        return checked, witness

    manager = multiprocessing.Manager()
    try:
        cancel = manager.Event()
        roots = _words_of_length(split, order)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_walk_task, backend, w, max_len, early_exit, order, cancel)
                for w in roots
            ]
            results = [f.result() for f in futures]
    finally:
        manager.shutdown()
    for sub_checked, sub_witness, _ in results:
        checked += sub_checked
        if sub_witness is not None and witness is None:
            witness = sub_witness
    return checked, witness


def _check_pair(A: RMatrix, B: RMatrix):
    if not (A.is_square and B.is_square) or A.rows != B.rows:
        raise DimensionMismatch(f"st_test needs two square matrices of equal size, "
                                f"got {A.shape} and {B.shape}")


def _lift(M: RMatrix, num_vars: int) -> RMatrix:
    return M.map(lambda e: e if isinstance(e, MPoly) else MPoly.constant(num_vars, e))


def _is_symbolic(M: RMatrix) -> bool:
    return any(isinstance(e, MPoly) for e in M.entries)


def st_test(A: RMatrix, B: RMatrix, early_exit: bool = True, max_len: int | None = None,
            order: str = "AB", parallel: int = 1,
            term_ceiling: int = DEFAULT_TERM_CEILING) -> STReport:
    """Decide simultaneous triangularizability of ``(A, B)`` by word traces.

    Matrices with polynomial entries are tested symbolically: a word passes
    only if its trace is the zero polynomial.
    """
    _check_pair(A, B)
    n = A.rows
    max_len = n * n - 1 if max_len is None else max_len
    if _is_symbolic(A) or _is_symbolic(B):
        nv = next(e.num_vars for e in (*A.entries, *B.entries) if isinstance(e, MPoly))
        backend = _SymbolicBackend(_lift(A, nv), _lift(B, nv), term_ceiling)
    else:
        backend = _ExactBackend(A, B, max_len)
    return _run(backend, n, max_len, early_exit, order, parallel)


def st_test_symbolic(A: RMatrix, Bsym: RMatrix, early_exit: bool = True,
                     max_len: int | None = None, order: str = "AB", parallel: int = 1,
                     term_ceiling: int = DEFAULT_TERM_CEILING) -> STReport:
    """Word-trace test for a constant ``A`` against a parametrized family ``Bsym``.

    ``ST`` here holds for every specialization of the parameters at once.
    Raises :class:`SymbolicBlowup` when a product entry exceeds ``term_ceiling``.
    """
    _check_pair(A, Bsym)
    if _is_symbolic(Bsym):
        nv = next(e.num_vars for e in Bsym.entries if isinstance(e, MPoly))
    else:
        nv = 0
    n = A.rows
    max_len = n * n - 1 if max_len is None else max_len
    backend = _SymbolicBackend(_lift(A, nv), _lift(Bsym, nv), term_ceiling)
    return _run(backend, n, max_len, early_exit, order, parallel)


def randomized_st_family(A: RMatrix, report: SylvesterReport, trials: int, seed: int = 42,
                         coeff_bound: int = 1000, early_exit: bool = True,
                         parallel: int = 1) -> list[STReport]:
    """Exact tests on ``trials`` random members of the ker(phi) family of ``A``.

    Each verdict is exact for its instance; agreement across all trials is
    probabilistic evidence for the whole family.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    reports = []
    for _ in range(trials):
        B = sample_B(report, rng.getrandbits(63), coeff_bound)
        reports.append(st_test(A, B, early_exit=early_exit, parallel=parallel))
    return reports


# -- reference enumeration (tests and diagnostics) ---------------------------


def word_traces(A: RMatrix, B: RMatrix, max_len: int | None = None,
                order: str = "AB") -> Iterator[tuple[str, object]]:
    """Yield ``(letters, trace)`` for every word, in depth-first tree order."""
    _check_pair(A, B)
    max_len = A.rows ** 2 - 1 if max_len is None else max_len
    C = commutator(A, B)
    letters = {"A": A, "B": B}
    stack = [(u, letters[u] @ C) for u in reversed(order)] if max_len >= 1 else []
    while stack:
        word, V = stack.pop()
        yield word, trace(V)
        if len(word) < max_len:
            stack.append((order[1] + word, letters[order[1]] @ V))
            stack.append((order[0] + word, letters[order[0]] @ V))


def naive_word_trace(A: RMatrix, B: RMatrix, letters: str):
    """Trace of ``U1 ... Uk (AB - BA)`` by direct left-to-right multiplication."""
    mats = {"A": A, "B": B}
    P = mats[letters[0]]
    for letter in letters[1:]:
        P = P @ mats[letter]
    return trace(P @ commutator(A, B))
