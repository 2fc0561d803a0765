"""Sparse multivariate polynomials over the Gaussian rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DivisionByZero, VariableCountMismatch
from .scalar import GaussianRational

__all__ = ["MPoly", "poly_arith", "poly_eval", "poly_is_zero", "grlex_key"]

_SCALARS = (int, Fraction, GaussianRational)


def grlex_key(exps: tuple) -> tuple:
    """Sort key for graded lexicographic order (larger key = larger monomial)."""
    return (sum(exps), exps)


class MPoly:
    """Polynomial in ``num_vars`` variables with a sparse term map.

    ``_terms`` maps exponent tuples to nonzero :class:`GaussianRational`
    coefficients. Instances are treated as immutable.
    """

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[tuple, object] | None = None):
        self.num_vars = num_vars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != num_vars:
                    raise VariableCountMismatch(
                        f"exponent {exps} has {len(exps)} entries, expected {num_vars}"
                    )
                c = GaussianRational.coerce(c)
                if c:
                    clean[exps] = clean.get(exps, GaussianRational(0)) + c
            clean = {e: c for e, c in clean.items() if c}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, num_vars: int, terms: dict) -> MPoly:
        obj = cls.__new__(cls)
        obj.num_vars = num_vars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, num_vars: int, value=0) -> MPoly:
        c = GaussianRational.coerce(value)
        return cls._raw(num_vars, {(0,) * num_vars: c} if c else {})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> MPoly:
        if not 0 <= index < num_vars:
            raise VariableCountMismatch(f"variable index {index} out of range for {num_vars} vars")
        exps = [0] * num_vars
        exps[index] = 1
        return cls._raw(num_vars, {tuple(exps): GaussianRational(1)})

    @classmethod
    def generators(cls, num_vars: int) -> list[MPoly]:
        return [cls.variable(num_vars, k) for k in range(num_vars)]

    # -- structure ----------------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def terms(self) -> list[tuple[tuple, GaussianRational]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(exps), GaussianRational(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.num_vars in self._terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.num_vars, GaussianRational(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic -----------------------------------------------------------

    def _lift(self, other) -> MPoly | None:
        if isinstance(other, MPoly):
            if other.num_vars != self.num_vars:
                raise VariableCountMismatch(
                    f"{self.num_vars} variables vs {other.num_vars} variables"
                )
            return other
        if isinstance(other, _SCALARS):
            return MPoly.constant(self.num_vars, other)
        return None

    def __add__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        if len(q._terms) > len(self._terms):
            big, small = q._terms, self._terms
        else:
            big, small = self._terms, q._terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        q = self._lift(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = GaussianRational.coerce(other)
            if not c:
                return MPoly._raw(self.num_vars, {})
            return MPoly._raw(self.num_vars, {e: v * c for e, v in self._terms.items()})
        q = self._lift(other)
        if q is None:
            return NotImplemented
        a, b = self._terms, q._terms
        if not a or not b:
            return MPoly._raw(self.num_vars, {})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = get(e)
                out[e] = ca * cb if s is None else s + ca * cb
        return MPoly._raw(self.num_vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, _SCALARS):
            return NotImplemented
        c = GaussianRational.coerce(other)
        if not c:
            raise DivisionByZero("polynomial divided by zero")
        inv = c.inverse()
        return MPoly._raw(self.num_vars, {e: v * inv for e, v in self._terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = MPoly.constant(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.num_vars == other.num_vars and self._terms == other._terms
        if isinstance(other, _SCALARS):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    def __reduce__(self):
        return (MPoly._raw, (self.num_vars, dict(self._terms)))

    # -- evaluation -----------------------------------------------------------

    def __call__(self, *point):
        return poly_eval(self, point)

    def partial_eval(self, assignment: Mapping[int, object]) -> MPoly:
        """Substitute the given variables and drop them from the ring."""
        values = {k: GaussianRational.coerce(v) for k, v in assignment.items()}
        for k in values:
            if not 0 <= k < self.num_vars:
                raise VariableCountMismatch(f"no variable {k} in a {self.num_vars}-variable ring")
        keep = [k for k in range(self.num_vars) if k not in values]
        out: dict = {}
        for exps, c in self._terms.items():
            for k, v in values.items():
                if exps[k]:
                    c = c * v ** exps[k]
            if not c:
                continue
            e = tuple(exps[k] for k in keep)
            s = out.get(e)
            out[e] = c if s is None else s + c
        return MPoly._raw(len(keep), {e: c for e, c in out.items() if c})

    # -- printing ---------------------------------------------------------------

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        if names is None:
            names = [f"x{k + 1}" for k in range(self.num_vars)]
        out = ""
        for exps, c in self.terms():
            mono = " ".join(
                names[k] if e == 1 else f"{names[k]}^{e}" for k, e in enumerate(exps) if e
            )
            sign = " + "
            if c.is_real() and c.re < 0:
                sign, c = " - ", -c
            text = f"{c} * {mono}" if mono else str(c)
            if not out:
                out = text if sign == " + " else "-" + text
            else:
                out += sign + text
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MPoly({self.num_vars}, {self.format()!r})"


def poly_arith(p: MPoly, q: MPoly, op: str) -> MPoly:
    if p.num_vars != q.num_vars:
        raise VariableCountMismatch(f"{p.num_vars} variables vs {q.num_vars} variables")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: MPoly, point: Iterable) -> GaussianRational:
    point = [GaussianRational.coerce(v) for v in point]
    if len(point) != p.num_vars:
        raise VariableCountMismatch(f"point has {len(point)} coordinates, expected {p.num_vars}")
    total = GaussianRational(0)
    for exps, c in p._terms.items():
        term = c
        for v, e in zip(point, exps):
            if e:
                term = term * v ** e
        total = total + term
    return total


def poly_is_zero(p: MPoly) -> bool:
    return p.is_zero()
