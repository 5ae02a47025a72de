"""Closed forms and identities for divided symmetrization on paths and cycles.

``phi`` is DS over the path 0 - 1 - ... - n.  ``y_i = x_0 + ... + x_i``.
On the cycle of m = n + d vertices (numbered counter-clockwise), an empty set
P of size d cuts the cycle into d arcs; ``z_i`` sums the variables walking
clockwise (decreasing index) from i up to, but excluding, the next P-vertex.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from divsym.engine import ds_constant
from divsym.errors import PreconditionError
from divsym.graphs import cycle_graph, path_graph
from divsym.poly import Polynomial, all_ones, evaluate, prefix_sum_monomial


def phi(f: Polynomial, **kwargs) -> Fraction:
    return ds_constant(f, path_graph(f.m), **kwargs)


def lemma2_value(i: int, n: int) -> int:
    """phi(x_i^n) on the path with n + 1 vertices."""
    if not 0 <= i <= n:
        raise PreconditionError(f"need 0 <= i <= n, got i={i}, n={n}")
    return (-1) ** i * math.comb(n, i)


def lemma2_engine(i: int, n: int, **kwargs) -> Fraction:
    exps = [0] * (n + 1)
    exps[i] = n
    return phi(Polynomial.monomial(exps), **kwargs)


def verify_eq2(n: int, **kwargs):
    """(phi(y_0 y_1 ... y_{n-1}), n!)."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    lhs = phi(prefix_sum_monomial([1] * n + [0]), **kwargs)
    return lhs, Fraction(math.factorial(n))


def _check_composition(c: Sequence[int]) -> tuple:
    c = tuple(int(v) for v in c)
    if not c or any(v < 0 for v in c):
        raise PreconditionError(f"need a nonempty sequence of nonnegative ints, got {c}")
    return c


def postnikov_check(c: Sequence[int], **kwargs):
    """Cyclic-shift sum of phi(prod y_j^{c_{j+s}}) against n!."""
    c = _check_composition(c)
    n = len(c) - 1
    if sum(c) != n:
        raise PreconditionError(f"exponents must sum to {n}, got {sum(c)}")
    lhs = Fraction(0)
    for s in range(n + 1):
        shifted = [c[(j + s) % (n + 1)] for j in range(n + 1)]
        lhs += phi(prefix_sum_monomial(shifted), **kwargs)
    return lhs, Fraction(math.factorial(n))


def postnikov_check_poly(h: Polynomial, **kwargs):
    """Same identity for a homogeneous h of degree n in n + 1 variables,
    by linearity over its monomials."""
    n = h.m - 1
    if not h.is_zero() and (not h.is_homogeneous() or h.degree != n):
        raise PreconditionError(f"h must be homogeneous of degree {n}")
    lhs = Fraction(0)
    for exps, coef in h:
        part, _ = postnikov_check(exps, **kwargs)
        lhs += coef * part
    return lhs, math.factorial(n) * evaluate(h, all_ones(h.m))


def q_residual(c: Sequence[int], **kwargs) -> Fraction:
    lhs, rhs = postnikov_check(c, **kwargs)
    return lhs - rhs


def q_relation_check(c: Sequence[int], i: int, **kwargs) -> Fraction:
    """2Q(c) - Q(coin moved from i to i-1) - Q(coin moved from i to i+1)."""
    c = list(_check_composition(c))
    m = len(c)
    if not 0 <= i < m or c[i] < 2:
        raise PreconditionError(f"need c_{i} >= 2, got {c}")
    left, right = list(c), list(c)
    left[i] -= 1
    left[(i - 1) % m] += 1
    right[i] -= 1
    right[(i + 1) % m] += 1
    return 2 * q_residual(c, **kwargs) - q_residual(left, **kwargs) - q_residual(right, **kwargs)


# cycle generalization


def _check_empty_set(P, m: int) -> tuple:
    P = tuple(sorted(set(int(p) for p in P)))
    if not P:
        raise PreconditionError("empty set P must be nonempty")
    if P[0] < 0 or P[-1] >= m:
        raise PreconditionError(f"P = {P} out of range for m = {m}")
    return P


def group_weight(P, m: int) -> int:
    """Product of the sizes of the arcs cut out by P; each arc ends at
    (and includes) one P-vertex."""
    P = _check_empty_set(P, m)
    d = len(P)
    return math.prod((P[(k + 1) % d] - P[k]) % m or m for k in range(d))


def z_forms(P, m: int) -> list:
    P = _check_empty_set(P, m)
    members = set(P)
    out = []
    for i in range(m):
        if i in members:
            out.append(Polynomial.constant(1, m))
            continue
        z, j = Polynomial.zero(m), i
        while j not in members:
            z = z + Polynomial.variable(j, m)
            j = (j - 1) % m
        out.append(z)
    return out


def empty_set_factor(P, m: int) -> Polynomial:
    """prod_{p in P} (x_{p+1} - x_p), indices mod m, taken literally."""
    P = _check_empty_set(P, m)
    f = Polynomial.constant(1, m)
    for p in P:
        f = f * (Polynomial.variable((p + 1) % m, m) - Polynomial.variable(p, m))
    return f


def orientation_sign(d: int) -> int:
    # Against the normalized (x_i - x_j), i < j, cycle denominator, the literal
    # factor above carries (-1)^(d-1) relative to the arc-wise path orientation.
    return -1 if (d - 1) % 2 else 1


def _cycle_term(h: Polynomial, P: tuple, **kwargs) -> Fraction:
    """w(P) * DS_cycle(factor * h(z^P)) with orientation fixed."""
    m = h.m
    z = z_forms(P, m)
    hz = Polynomial.zero(m)
    for exps, coef in h:
        mono = Polynomial.constant(coef, m)
        for zi, e in zip(z, exps):
            if e:
                mono = mono * zi**e
        hz = hz + mono
    f = empty_set_factor(P, m) * hz
    ds = ds_constant(f, cycle_graph(m), **kwargs)
    return orientation_sign(len(P)) * group_weight(P, m) * ds


def _cycle_setup(c, d):
    c = _check_composition(c)
    m = len(c)
    n = sum(c)
    if d < 1 or m != n + d:
        raise PreconditionError(f"need m = n + d with d >= 1, got m={m}, n={n}, d={d}")
    if m < 3:
        raise PreconditionError("the cycle needs at least 3 vertices")
    return c, m


def prob_empty_set_formula(c: Sequence[int], P, **kwargs) -> Fraction:
    """Probability that exactly the vertices in P end empty, via DS on the cycle."""
    c = _check_composition(c)
    P = _check_empty_set(P, len(c))
    c, m = _cycle_setup(c, len(P))
    return _cycle_term(Polynomial.monomial(c), P, **kwargs) / math.factorial(m)


def all_prob_empty_sets(c: Sequence[int], d: int, **kwargs) -> dict:
    c, m = _cycle_setup(c, d)
    return {P: prob_empty_set_formula(c, P, **kwargs) for P in combinations(range(m), d)}


def cycle_identity_check(c: Sequence[int], d: int, **kwargs):
    """(sum_P w(P) DS(...), (n+d)! h(1,...,1)) for the monomial h with exponents c."""
    c, m = _cycle_setup(c, d)
    h = Polynomial.monomial(c)
    lhs = sum((_cycle_term(h, P, **kwargs) for P in combinations(range(m), d)), Fraction(0))
    return lhs, math.factorial(m) * evaluate(h, all_ones(m))


def cycle_identity_check_poly(h: Polynomial, d: int, **kwargs):
    """Same identity for h homogeneous of degree n in n + d variables."""
    m = h.m
    n = m - d
    if d < 1 or m < 3:
        raise PreconditionError(f"need m = n + d >= 3 with d >= 1, got m={m}, d={d}")
    if not h.is_zero() and (not h.is_homogeneous() or h.degree != n):
        raise PreconditionError(f"h must be homogeneous of degree {n}")
    lhs = Fraction(0)
    for P in combinations(range(m), d):
        lhs += _cycle_term(h, P, **kwargs)
    return lhs, math.factorial(m) * evaluate(h, all_ones(m))


__all__ = [
    "all_prob_empty_sets",
    "cycle_identity_check",
    "cycle_identity_check_poly",
    "empty_set_factor",
    "group_weight",
    "lemma2_engine",
    "lemma2_value",
    "orientation_sign",
    "phi",
    "postnikov_check",
    "postnikov_check_poly",
    "prob_empty_set_formula",
    "q_relation_check",
    "q_residual",
    "verify_eq2",
    "z_forms",
]
