"""Seeded random instances for the property checks and ``divsym verify``."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from divsym.graphs import Graph, components_after_removal, random_tree
from divsym.poly import Polynomial
from divsym.trees import WeightAssignment


def random_graph(m: int, rng: random.Random, p: float = 0.4) -> Graph:
    pairs = [e for e in combinations(range(m), 2) if rng.random() < p]
    return Graph(m, pairs)


def random_connected_graph(m: int, rng: random.Random, extra: float = 0.3) -> Graph:
    t = random_tree(m, rng)
    edges = set(t.edges)
    edges.update(e for e in combinations(range(m), 2) if rng.random() < extra)
    return Graph(m, edges)


def random_exponents(m: int, degree: int, rng: random.Random) -> tuple:
    exps = [0] * m
    for _ in range(degree):
        exps[rng.randrange(m)] += 1
    return tuple(exps)


def random_polynomial(m: int, max_degree: int, rng: random.Random, terms: int = 4,
                      homogeneous: bool = False) -> Polynomial:
    if max_degree < 0:
        return Polynomial.zero(m)
    out = {}
    for _ in range(terms):
        deg = max_degree if homogeneous else rng.randint(0, max_degree)
        e = random_exponents(m, deg, rng)
        out[e] = out.get(e, 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(m, out)


def random_distinct_point(m: int, rng: random.Random) -> tuple:
    while True:
        pt = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 5)) for _ in range(m))
        if len(set(pt)) == m:
            return pt


def random_weights(m: int, rng: random.Random) -> WeightAssignment:
    return WeightAssignment.from_exponents(random_exponents(m, m - 1, rng))


def random_tree_instance(rng: random.Random, max_m: int = 7):
    m = rng.randint(1, max_m)
    return random_tree(m, rng), random_weights(m, rng)


def elementary_symmetric(block, k: int, m: int) -> Polynomial:
    out = Polynomial.zero(m)
    for sub in combinations(sorted(block), k):
        exps = [0] * m
        for v in sub:
            exps[v] = 1
        out = out + Polynomial.monomial(exps)
    return out


def random_lemma1_instance(rng: random.Random, max_m: int = 6):
    """(h, removed, block, g, cofactor) for a vanishing check: symmetric h in a component of g with edges removed."""
    while True:
        m = rng.randint(2, max_m)
        g = random_connected_graph(m, rng)
        nE = len(g.edges)
        k = rng.randint(0, min(2, nE - 1))
        removed = rng.sample(g.edges, k)
        comps = components_after_removal(g, removed)
        block = rng.choice(comps)
        sym_deg = rng.randint(1, min(len(block), max(1, nE - k)))
        h = elementary_symmetric(block, sym_deg, m)
        if rng.random() < 0.5:
            # a factor in the other variables keeps h symmetric in block
            others = [v for v in range(m) if v not in block]
            if others and sym_deg + k < nE:
                h = h * Polynomial.variable(rng.choice(others), m)
        budget = nE - k - h.degree
        if budget < 0:
            continue
        cofactor = random_polynomial(m, budget, rng, terms=3)
        if cofactor.is_zero():
            cofactor = Polynomial.constant(1, m)
        return h, removed, block, g, cofactor


def random_eq1_instance(rng: random.Random, max_m: int = 6):
    """(f_u, f_w, g_u, g_w) with deg f_u + deg f_w <= |E_U| + |E_W|."""
    mu = rng.randint(1, max_m - 1)
    mw = rng.randint(1, max_m - mu)
    g_u, g_w = random_graph(mu, rng, 0.6), random_graph(mw, rng, 0.6)
    nu, nw = len(g_u.edges), len(g_w.edges)
    shift = rng.choice([0, 0, 0, 1, -1])
    du, dw = nu + shift, nw - shift
    if du < 0 or dw < 0:
        du, dw = nu, nw
    f_u = random_polynomial(mu, du, rng, terms=3, homogeneous=True) + random_polynomial(
        mu, du - 1, rng, terms=2)
    f_w = random_polynomial(mw, dw, rng, terms=3, homogeneous=True) + random_polynomial(
        mw, dw - 1, rng, terms=2)
    return f_u, f_w, g_u, g_w


def random_coin_config(m: int, n: int, rng: random.Random) -> tuple:
    return random_exponents(m, n, rng)
