"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives in a fixed number ``m`` of indexed variables
``x_0 .. x_{m-1}``.  Terms are stored as a mapping from exponent tuples to
nonzero :class:`fractions.Fraction` coefficients.  Values are immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from divsym.errors import InputError, PreconditionError

Monomial = tuple  # tuple[int, ...] of length m
Point = tuple  # tuple[Fraction, ...]
Permutation = tuple  # tuple[int, ...], images of 0..m-1

# Degree of the zero polynomial.  Deliberately not -1 (a legal vertex weight).
NEG_INF = float("-inf")


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not supported")
    return Fraction(c)


class Polynomial:
    __slots__ = ("_m", "_terms")

    def __init__(self, m: int, terms: Mapping[Sequence[int], object] | None = None):
        if m < 0:
            raise PreconditionError(f"variable count must be nonnegative, got {m}")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != m:
                raise PreconditionError(f"exponent vector {exps} does not have length {m}")
            if any(e < 0 for e in exps):
                raise PreconditionError(f"negative exponent in {exps}")
            c = _as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self._m = m
        self._terms = {k: clean[k] for k in sorted(clean) if clean[k]}

    @classmethod
    def _raw(cls, m, terms):
        # terms already clean; only sort and drop zeros
        p = cls.__new__(cls)
        p._m = m
        p._terms = {k: terms[k] for k in sorted(terms) if terms[k]}
        return p

    # construction helpers

    @classmethod
    def zero(cls, m: int) -> "Polynomial":
        return cls(m)

    @classmethod
    def constant(cls, c, m: int) -> "Polynomial":
        return cls(m, {(0,) * m: c})

    @classmethod
    def variable(cls, i: int, m: int) -> "Polynomial":
        if not 0 <= i < m:
            raise PreconditionError(f"variable index {i} out of range for m={m}")
        exps = [0] * m
        exps[i] = 1
        return cls(m, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coef=1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coef})

    @classmethod
    def linear(cls, coefs: Mapping[int, object], m: int) -> "Polynomial":
        """Linear form ``sum coefs[i] * x_i``."""
        p = cls.zero(m)
        for i, c in coefs.items():
            p = p + cls.variable(i, m).scale(c)
        return p

    # accessors

    @property
    def m(self) -> int:
        return self._m

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self._m, {e: c for e, c in self._terms.items() if sum(e) == d})

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._m == other._m and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self._m)
        return NotImplemented

    def __hash__(self):
        return hash((self._m, tuple(self._terms.items())))

    def __repr__(self):
        return f"Polynomial(m={self._m}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self._terms.items():
            mono = "*".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic

    def _check(self, other: "Polynomial"):
        if self._m != other._m:
            raise PreconditionError(
                f"mismatched variable counts: {self._m} vs {other._m}"
            )

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self._m)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial._raw(self._m, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self._m, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ta, tb = self._terms, other._terms
        integral = all(c.denominator == 1 for c in ta.values()) and all(
            c.denominator == 1 for c in tb.values()
        )
        if integral:
            ta = {e: c.numerator for e, c in ta.items()}
            tb = {e: c.numerator for e, c in tb.items()}
        out = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(map(int.__add__, ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        if integral:
            out = {e: Fraction(c) for e, c in out.items() if c}
        return Polynomial._raw(self._m, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PreconditionError(f"exponent must be a nonnegative int, got {k!r}")
        result = Polynomial.constant(1, self._m)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self._m)
        return Polynomial._raw(self._m, {e: v * c for e, v in self._terms.items()})

    def embed(self, m: int, offset: int = 0) -> "Polynomial":
        """Re-index into ``m`` variables, sending x_i to x_{i+offset}."""
        if offset < 0 or offset + self._m > m:
            raise PreconditionError(
                f"cannot embed {self._m} variables at offset {offset} into {m}"
            )
        pad_l, pad_r = (0,) * offset, (0,) * (m - offset - self._m)
        return Polynomial._raw(m, {pad_l + e + pad_r: c for e, c in self._terms.items()})

    # serialization

    def to_json(self) -> dict:
        return {
            "format": 1,
            "m": self._m,
            "terms": [
                {"coef": [str(c.numerator), str(c.denominator)], "exp": list(e)}
                for e, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Polynomial":
        try:
            m = int(obj["m"])
            terms = {}
            for t in obj["terms"]:
                num, den = t["coef"]
                exps = tuple(int(e) for e in t["exp"])
                c = Fraction(int(num), int(den))
                terms[exps] = terms.get(exps, 0) + c
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from exc
        try:
            return cls(m, terms)
        except PreconditionError as exc:
            raise InputError(str(exc)) from exc


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a * b


def poly_scale(a: Polynomial, c) -> Polynomial:
    return a.scale(c)


def _check_permutation(pi: Sequence[int], m: int) -> tuple:
    pi = tuple(pi)
    if len(pi) != m:
        raise PreconditionError(f"permutation has length {len(pi)}, expected {m}")
    if sorted(pi) != list(range(m)):
        raise PreconditionError(f"{pi} is not a permutation of 0..{m - 1}")
    return pi


def permute_variables(p: Polynomial, pi: Sequence[int]) -> Polynomial:
    """Substitute x_i -> x_{pi[i]} in every term."""
    pi = _check_permutation(pi, p.m)
    out = {}
    for exps, c in p:
        new = [0] * p.m
        for i, e in enumerate(exps):
            new[pi[i]] = e
        out[tuple(new)] = c
    return Polynomial._raw(p.m, out)


def evaluate(p: Polynomial, pt: Sequence) -> Fraction:
    if len(pt) != p.m:
        raise PreconditionError(f"point has {len(pt)} coordinates, expected {p.m}")
    pt = [_as_fraction(v) for v in pt]
    total = Fraction(0)
    for exps, c in p:
        total += c * math.prod(v**e for v, e in zip(pt, exps) if e)
    return total


def prefix_sum_monomial(c: Sequence[int]) -> Polynomial:
    """Expand prod_i (x_0 + ... + x_i)^{c_i}."""
    c = list(c)
    if not c:
        raise PreconditionError("exponent sequence must be nonempty")
    if any(e < 0 for e in c):
        raise PreconditionError(f"negative exponent in {c}")
    m = len(c)
    result = Polynomial.constant(1, m)
    y = Polynomial.zero(m)
    for i, e in enumerate(c):
        y = y + Polynomial.variable(i, m)
        if e:
            result = result * y**e
    return result


def all_ones(m: int) -> tuple:
    return (Fraction(1),) * m


def compositions(n: int, parts: int) -> Iterable[tuple]:
    """All tuples of ``parts`` nonnegative ints summing to ``n``, largest first part first."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest
