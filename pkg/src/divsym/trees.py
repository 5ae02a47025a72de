"""Signed counts of acceptable permutations for tree monomials.

A weight assignment ``w`` (each w(v) >= -1, total -1) encodes the monomial
``prod x_v^(w(v)+1)`` of degree m-1.  Removing a tree edge (x, y), x < y,
leaves two components, exactly one of negative total weight.  The edge is
*regular* when that component contains y and *inversive* otherwise.  A
permutation pi is acceptable when pi(x) < pi(y) holds exactly on regular
edges; the signed count is (-1)^(#inversive) times the number of such pi and
equals DS_T of the monomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from divsym.errors import InputError, PreconditionError
from divsym.graphs import Graph, components_after_removal, validate_tree
from divsym.poly import Polynomial


@dataclass(frozen=True)
class WeightAssignment:
    w: tuple

    def __init__(self, w: Sequence[int]):
        w = tuple(int(v) for v in w)
        if not w:
            raise PreconditionError("weight assignment must be nonempty")
        if any(v < -1 for v in w):
            raise PreconditionError(f"weights must be >= -1: {w}")
        if sum(w) != -1:
            raise PreconditionError(f"weights must sum to -1, got {sum(w)}")
        object.__setattr__(self, "w", w)

    @property
    def m(self) -> int:
        return len(self.w)

    def exponents(self) -> tuple:
        return tuple(v + 1 for v in self.w)

    def monomial(self) -> Polynomial:
        return Polynomial.monomial(self.exponents())

    @classmethod
    def from_exponents(cls, exps: Sequence[int]) -> "WeightAssignment":
        return cls([e - 1 for e in exps])

    def to_json(self) -> dict:
        return {"format": 1, "w": list(self.w)}

    @classmethod
    def from_json(cls, obj) -> "WeightAssignment":
        try:
            w = [int(v) for v in obj["w"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed weight JSON: {exc}") from exc
        try:
            return cls(w)
        except PreconditionError as exc:
            raise InputError(str(exc)) from exc


@dataclass(frozen=True)
class EdgeClassification:
    edges: tuple  # normalized (x, y), x < y
    regular: tuple  # bool per edge

    @property
    def sign(self) -> int:
        return -1 if sum(not r for r in self.regular) % 2 else 1

    def constraints(self) -> list:
        """Pairs (a, b) meaning pi(a) < pi(b)."""
        return [(x, y) if r else (y, x) for (x, y), r in zip(self.edges, self.regular)]


def classify_edges(t: Graph, w: WeightAssignment) -> EdgeClassification:
    validate_tree(t)
    if w.m != t.m:
        raise PreconditionError(f"{w.m} weights for a tree on {t.m} vertices")
    regular = []
    for x, y in t.edges:
        comps = components_after_removal(t, [(x, y)])
        side_y = next(c for c in comps if y in c)
        wy = sum(w.w[v] for v in side_y)
        wx = -1 - wy
        # integer split of -1: exactly one side is negative
        assert (wy < 0) != (wx < 0)
        regular.append(wy < 0)
    return EdgeClassification(t.edges, tuple(regular))


def acceptable_count_bruteforce(t: Graph, cls: EdgeClassification) -> int:
    cons = cls.constraints()
    return sum(
        all(pi[a] < pi[b] for a, b in cons) for pi in permutations(range(t.m))
    )


def acceptable_count_fast(t: Graph, cls: EdgeClassification) -> int:
    """Linear extensions of the oriented tree by a rank-distribution DP.

    For the subtree at r, ``a[k]`` counts orders of its vertices with r at
    rank k+1.  Children are merged one at a time over all interleavings.
    """
    m = t.m
    below = {}  # (u, v) -> True when pi(u) < pi(v) is required
    for a, b in cls.constraints():
        below[(a, b)] = True
        below[(b, a)] = False
    adj = t.adjacency()
    order, parent = [0], {0: None}
    for v in order:
        for u in adj[v]:
            if u not in parent:
                parent[u] = v
                order.append(u)
    dist = {}
    for r in reversed(order):
        a = [1]
        for c in adj[r]:
            if c == parent[r]:
                continue
            b = dist.pop(c)
            sr, sc = len(a), len(b)
            if below[(r, c)]:
                # r precedes c: fewer than j child vertices before r when c has rank j
                tail = [0] * (sc + 1)
                for j in range(sc - 1, -1, -1):
                    tail[j] = tail[j + 1] + b[j]
                allowed = tail  # allowed[t] = sum_{j >= t+1} b, with b 0-based
            else:
                head = [0] * (sc + 1)
                for j in range(sc):
                    head[j + 1] = head[j] + b[j]
                allowed = head  # allowed[t] = sum_{j <= t} b
            new = [0] * (sr + sc)
            for i in range(sr):
                if not a[i]:
                    continue
                for k in range(sc + 1):
                    if not allowed[k]:
                        continue
                    ways = math.comb(i + k, k) * math.comb(sr - 1 - i + sc - k, sc - k)
                    new[i + k] += a[i] * ways * allowed[k]
            a = new
        dist[r] = a
    return sum(dist[0])


def tau(t: Graph, w: WeightAssignment, method: str = "fast") -> int:
    cls = classify_edges(t, w)
    if method == "fast":
        count = acceptable_count_fast(t, cls)
    elif method == "brute":
        count = acceptable_count_bruteforce(t, cls)
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return cls.sign * count


def pointed_weights(m: int, x: int) -> WeightAssignment:
    """Weights of the monomial x_x^(m-1)."""
    w = [-1] * m
    w[x] = m - 2
    return WeightAssignment(w)


def is_pointed(pi: Sequence[int], x: int, t: Graph) -> bool:
    """pi(u) > pi(v) for every edge uv with u on the x-side of v,
    i.e. values decrease moving away from x."""
    adj = t.adjacency()
    seen, stack = {x}, [x]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                if pi[u] < pi[v]:
                    return False
                seen.add(v)
                stack.append(v)
    return True


def pointed_involution(pi: Sequence[int], x: int, t: Graph):
    """Swap the two largest values between x and its neighbour y carrying the
    second largest, and re-point at y.  Returns ``(pi', y)``."""
    pi = tuple(pi)
    m = t.m
    if m < 2:
        raise PreconditionError("involution needs at least two vertices")
    if sorted(pi) != list(range(m)):
        raise PreconditionError(f"{pi} is not a permutation of 0..{m - 1}")
    v1, v2 = m - 1, m - 2
    if pi[x] != v1:
        raise PreconditionError(f"pi({x}) = {pi[x]} is not the maximum {v1}")
    if not is_pointed(pi, x, t):
        raise PreconditionError(f"{pi} is not pointed at {x}")
    y = pi.index(v2)
    if y not in t.adjacency()[x]:
        raise PreconditionError(f"vertices {x} and {y} are not adjacent")
    out = list(pi)
    out[x], out[y] = v2, v1
    return tuple(out), y


def pointed_permutations(t: Graph) -> list:
    """All (pi, x) with pi pointed at x."""
    return [
        (pi, x)
        for x in range(t.m)
        for pi in permutations(range(t.m))
        if pi[x] == t.m - 1 and is_pointed(pi, x, t)
    ]
