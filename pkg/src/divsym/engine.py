"""Divided symmetrization DS_G(f) for deg f <= |E|.

In that degree range the symmetrized sum

    sum over permutations pi of  f(x_pi(0), ..., x_pi(m-1)) / prod_{(i,j) in E} (x_pi(i) - x_pi(j))

is a constant, so it is read off exactly by evaluating at a single point with
distinct coordinates.  The sum is linear in ``f``; per-monomial sums are cached
per (graph, point) so that families of related polynomials share work.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from itertools import islice, permutations
from typing import Iterable, Sequence

from divsym.errors import CapExceeded, PreconditionError, VerificationError
from divsym.graphs import (
    Graph,
    complete_graph,
    components_after_removal,
    disjoint_union,
)
from divsym.poly import Polynomial, _as_fraction, permute_variables

DEFAULT_MAX_M = 10
_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def default_point(m: int) -> tuple:
    return tuple(Fraction(k) for k in range(1, m + 1))


def second_point(m: int) -> tuple:
    """Verification point, disjoint in pattern from the default one."""
    if m <= len(_PRIMES):
        return tuple(Fraction(p) for p in _PRIMES[:m])
    return tuple(Fraction(k * k + 1) for k in range(m))


def _check_request(f: Polynomial, g: Graph, max_m: int):
    if f.m != g.m:
        raise PreconditionError(f"polynomial has {f.m} variables, graph has {g.m} vertices")
    if g.m > max_m:
        raise CapExceeded(
            f"m={g.m} needs {math.factorial(g.m)} permutations; cap is m <= {max_m}"
        )
    if f.degree > len(g.edges):
        raise PreconditionError(
            f"deg f = {f.degree} exceeds |E| = {len(g.edges)}; result would not be constant"
        )


def _check_point(pt: Sequence, m: int) -> tuple:
    if len(pt) != m:
        raise PreconditionError(f"point has {len(pt)} coordinates, expected {m}")
    pt = tuple(_as_fraction(v) for v in pt)
    if len(set(pt)) != m:
        raise PreconditionError(f"point coordinates must be pairwise distinct: {pt}")
    return pt


def _integerize(pt: tuple) -> tuple:
    """Write pt = a / q with integer a and positive integer q."""
    q = math.lcm(*(v.denominator for v in pt)) if pt else 1
    return tuple(int(v * q) for v in pt), q


def _monomial_sums(m, edges, a, monos, lo, hi):
    """For each exponent vector in ``monos``, the exact sum over permutations
    number lo..hi-1 (lexicographic) of prod a[pi(i)]^e_i / prod_E (a[pi(i)] - a[pi(j)]).
    """
    maxdeg = max((max(e) for e in monos), default=0)
    pw = [[v**k for k in range(maxdeg + 1)] for v in a]
    sparse = [[(i, k) for i, k in enumerate(e) if k] for e in monos]
    acc = [0] * len(monos)
    lcm_d = 1
    for perm in islice(permutations(range(m)), lo, hi):
        d = 1
        for i, j in edges:
            d *= a[perm[i]] - a[perm[j]]
        ad = abs(d)
        if lcm_d % ad:
            new = lcm_d * ad // math.gcd(lcm_d, ad)
            r = new // lcm_d
            acc = [x * r for x in acc]
            lcm_d = new
        w = lcm_d // d
        for k, sp in enumerate(sparse):
            prod = w
            for i, e in sp:
                prod *= pw[perm[i]][e]
            acc[k] += prod
    return [Fraction(x, lcm_d) for x in acc]


def _chunk_job(args):
    return _monomial_sums(*args)


def chunk_bounds(total: int, chunks: int) -> list:
    """Split range(total) into contiguous (lo, hi) chunks."""
    chunks = max(1, min(chunks, total))
    step, extra = divmod(total, chunks)
    out, lo = [], 0
    for c in range(chunks):
        hi = lo + step + (1 if c < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


@lru_cache(maxsize=256)
def _table(m: int, edges: tuple, a: tuple) -> dict:
    return {}


def _ds_at(f: Polynomial, g: Graph, pt: tuple, workers: int) -> Fraction:
    a, q = _integerize(pt)
    table = _table(g.m, g.edges, a)
    missing = [e for e, _ in f if e not in table]
    if missing:
        total = math.factorial(g.m)
        if workers > 1 and total >= 5040:
            jobs = [
                (g.m, g.edges, a, missing, lo, hi)
                for lo, hi in chunk_bounds(total, 4 * workers)
            ]
            sums = [Fraction(0)] * len(missing)
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(_chunk_job, jobs):
                    sums = [s + p for s, p in zip(sums, part)]
        else:
            sums = _monomial_sums(g.m, g.edges, a, missing, 0, total)
        table.update(zip(missing, sums))
    nE = len(g.edges)
    result = Fraction(0)
    for e, c in f:
        # monomial of degree k at a/q picks up q^(|E| - k) after clearing q
        result += c * q ** (nE - sum(e)) * table[e]
    return result


def ds_constant(
    f: Polynomial,
    g: Graph,
    pt: Sequence | None = None,
    *,
    verify: bool = False,
    workers: int = 1,
    max_m: int = DEFAULT_MAX_M,
) -> Fraction:
    """Exact DS_g(f) for deg f <= |E|, evaluated at ``pt`` (default 1..m).

    With ``verify`` the value is recomputed at a second point and a
    :class:`VerificationError` is raised on mismatch.
    """
    _check_request(f, g, max_m)
    pt = default_point(g.m) if pt is None else _check_point(pt, g.m)
    value = _ds_at(f, g, pt, workers)
    if verify:
        other = second_point(g.m)
        if other == pt:
            other = default_point(g.m)
        value2 = _ds_at(f, g, other, workers)
        if value2 != value:
            raise VerificationError(
                f"point dependence detected: {value} at {pt} vs {value2} at {other}"
            )
    return value


def edge_difference(i: int, j: int, m: int) -> Polynomial:
    """The linear form x_i - x_j."""
    return Polynomial.linear({i: 1, j: -1}, m)


def edge_product(edges: Iterable, m: int) -> Polynomial:
    p = Polynomial.constant(1, m)
    for i, j in edges:
        p = p * edge_difference(i, j, m)
    return p


def ds_via_complete(f: Polynomial, g: Graph, **kwargs) -> Fraction:
    """DS_g(f) computed as DS of f * prod_{non-edges}(x_i - x_j) over K_m."""
    _check_request(f, g, kwargs.get("max_m", DEFAULT_MAX_M))
    k = complete_graph(g.m)
    present = set(g.edges)
    missing = [e for e in k.edges if e not in present]
    return ds_constant(f * edge_product(missing, g.m), k, **kwargs)


def check_eq1(f_u: Polynomial, f_w: Polynomial, g_u: Graph, g_w: Graph, **kwargs):
    """Both sides of the disjoint-union factorization.

    ``lhs`` is DS of f_u * f_w over the union of g_u and g_w (W shifted after U);
    ``rhs`` is binom(m, |U|) * DS_{g_u}(u) * DS_{g_w}(w) where u and w are the
    homogeneous parts of f_u, f_w of degree |E_U| and |E_W|.
    """
    if f_u.m != g_u.m or f_w.m != g_w.m:
        raise PreconditionError("polynomial and graph variable counts differ")
    nu, nw = len(g_u.edges), len(g_w.edges)
    if f_u.is_zero() or f_w.is_zero():
        deg_ok = True
    else:
        deg_ok = f_u.degree + f_w.degree <= nu + nw
    if not deg_ok:
        raise PreconditionError(
            f"deg f_u + deg f_w = {f_u.degree + f_w.degree} exceeds |E| = {nu + nw}"
        )
    g = disjoint_union(g_u, g_w)
    m = g.m
    f = f_u.embed(m, 0) * f_w.embed(m, g_u.m)
    lhs = ds_constant(f, g, **kwargs)
    u, w = f_u.homogeneous_part(nu), f_w.homogeneous_part(nw)
    if u.is_zero() or w.is_zero():
        rhs = Fraction(0)
    else:
        rhs = math.comb(m, g_u.m) * ds_constant(u, g_u, **kwargs) * ds_constant(w, g_w, **kwargs)
    return lhs, rhs


def is_symmetric_in(h: Polynomial, block: Iterable[int]) -> bool:
    """Invariance under adjacent transpositions of the sorted ``block``."""
    block = sorted(block)
    for a, b in zip(block, block[1:]):
        pi = list(range(h.m))
        pi[a], pi[b] = b, a
        if permute_variables(h, pi) != h:
            return False
    return True


def lemma1_vanishes(
    h: Polynomial,
    removed: Iterable,
    block: Iterable[int],
    g: Graph,
    cofactor: Polynomial | None = None,
    **kwargs,
) -> Fraction:
    """DS_g of h * prod_{removed}(x_i - x_j) * cofactor.

    ``h`` must be non-constant and symmetric in the variables of ``block``, and
    ``block`` a connected component of g minus ``removed``.  The returned value
    is expected to be zero.
    """
    removed = [tuple(sorted(e)) for e in removed]
    block = frozenset(block)
    if h.m != g.m:
        raise PreconditionError("polynomial and graph variable counts differ")
    if h.is_zero() or h.degree < 1:
        raise PreconditionError("h must be a non-constant polynomial")
    if not is_symmetric_in(h, block):
        raise PreconditionError(f"h is not symmetric in variables {sorted(block)}")
    if block not in components_after_removal(g, removed):
        raise PreconditionError(
            f"{sorted(block)} is not a connected component of the graph minus {removed}"
        )
    f = h * edge_product(removed, g.m)
    if cofactor is not None:
        f = f * cofactor
    return ds_constant(f, g, **kwargs)
