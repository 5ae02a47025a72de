import math
import random
from fractions import Fraction

import pytest

from divsym.engine import (
    check_eq1,
    chunk_bounds,
    ds_constant,
    ds_via_complete,
    edge_product,
    is_symmetric_in,
    lemma1_vanishes,
)
from divsym.errors import CapExceeded, PreconditionError
from divsym.graphs import Graph, complete_graph, path_graph
from divsym.instances import random_distinct_point, random_graph, random_polynomial
from divsym.poly import Polynomial
from conftest import naive_ds, xs


@pytest.fixture
def p3():
    return path_graph(3)


def test_oracle_values_on_path3(p3, x3):
    x0, x1, _ = x3
    # frozen from the direct permutation sum
    assert naive_ds(x0 * x1, p3) == 1
    assert naive_ds(x0**2, p3) == 1
    assert naive_ds(x1**2, p3) == -2


def test_ds_path3_examples(p3, x3):
    x0, x1, _ = x3
    assert ds_constant(x0**2, p3) == 1
    assert ds_constant(x1**2, p3) == -2
    assert ds_constant(x0, p3) == 0
    assert ds_constant(x0 * x1, p3) == 1


def test_ds_via_complete_examples(p3, x3):
    x0, x1, _ = x3
    assert ds_via_complete(x0**2, p3) == 1 == ds_constant(x0**2, p3)
    assert ds_via_complete(x1**2, p3) == -2
    k = complete_graph(3)
    f = x0**2 * x1
    assert ds_via_complete(f, k) == ds_constant(f, k)


def test_degree_guard(p3, x3):
    with pytest.raises(PreconditionError):
        ds_constant(x3[0] ** 3, p3)


def test_point_must_be_distinct(p3, x3):
    with pytest.raises(PreconditionError):
        ds_constant(x3[0] ** 2, p3, (1, 1, 2))


def test_permutation_cap():
    g = path_graph(11)
    with pytest.raises(CapExceeded):
        ds_constant(Polynomial.constant(1, 11), g)
    with pytest.raises(CapExceeded):
        ds_constant(Polynomial.constant(1, 4), path_graph(4), max_m=3)


def test_single_vertex_and_empty_edge_set():
    assert ds_constant(Polynomial.constant(1, 1), path_graph(1)) == 1
    # no edges: plain symmetrization of a constant
    assert ds_constant(Polynomial.constant(3, 3), Graph(3)) == 18


def test_verify_flag(p3, x3):
    assert ds_constant(x3[0] * x3[1], p3, verify=True) == 1


def test_rational_point(p3, x3):
    f = x3[0] * x3[1] + x3[2] - 4
    pt = (Fraction(1, 3), Fraction(-5, 2), Fraction(7, 4))
    assert ds_constant(f, p3, pt) == naive_ds(f, p3, pt) == ds_constant(f, p3)


@pytest.mark.parametrize("seed", range(25))
def test_engine_matches_naive_and_is_point_independent(seed):
    rng = random.Random(seed)
    m = rng.randint(2, 5)
    g = random_graph(m, rng, 0.5)
    f = random_polynomial(m, len(g.edges), rng)
    pt1, pt2 = random_distinct_point(m, rng), random_distinct_point(m, rng)
    value = ds_constant(f, g)
    assert ds_constant(f, g, pt1) == value == ds_constant(f, g, pt2)
    assert naive_ds(f, g, pt1) == value
    assert ds_via_complete(f, g) == value


@pytest.mark.parametrize("seed", range(10))
def test_linearity(seed):
    rng = random.Random(100 + seed)
    m = rng.randint(2, 5)
    g = random_graph(m, rng, 0.6)
    f = random_polynomial(m, len(g.edges), rng)
    h = random_polynomial(m, len(g.edges), rng)
    a, b = Fraction(rng.randint(-9, 9), 7), Fraction(rng.randint(-9, 9), 5)
    assert ds_constant(f.scale(a) + h.scale(b), g) == a * ds_constant(f, g) + b * ds_constant(h, g)


@pytest.mark.parametrize("seed", range(10))
def test_symmetric_factor_vanishes(seed):
    rng = random.Random(200 + seed)
    m = rng.randint(2, 5)
    g = random_graph(m, rng, 0.7)
    if not g.edges:
        g = path_graph(m)
    x = xs(m)
    k = rng.randint(1, len(g.edges))
    power_sum = sum((v**k for v in x), Polynomial.zero(m))
    cof = random_polynomial(m, len(g.edges) - k, rng)
    assert ds_constant(power_sum * cof, g) == 0


def test_lemma1_examples(p3, x3):
    x0, x1, x2 = x3
    assert lemma1_vanishes(x0 + x1, [(1, 2)], {0, 1}, p3) == 0
    assert naive_ds((x0 + x1) * (x1 - x2), p3) == 0
    e2 = x0 * x1 + x0 * x2 + x1 * x2
    assert lemma1_vanishes(e2, [], {0, 1, 2}, p3) == 0
    assert naive_ds(e2, p3) == 0
    e1 = x0 + x1 + x2
    assert lemma1_vanishes(e1, [], {0, 1, 2}, p3, cofactor=x0) == 0
    assert naive_ds(e1 * x0, p3) == 0


def test_lemma1_preconditions(p3, x3):
    x0, x1, x2 = x3
    with pytest.raises(PreconditionError):
        lemma1_vanishes(x0 + 2 * x1, [(1, 2)], {0, 1}, p3)  # not symmetric
    with pytest.raises(PreconditionError):
        lemma1_vanishes(x0 + x1, [], {0, 1}, p3)  # not a component
    with pytest.raises(PreconditionError):
        lemma1_vanishes(Polynomial.constant(2, 3), [], {0, 1, 2}, p3)


def test_symmetry_check():
    x = xs(4)
    assert is_symmetric_in(x[0] * x[1] * x[3] + x[2], {0, 1, 3})
    assert not is_symmetric_in(x[0] * x[1] ** 2, {0, 1})


def test_eq1_two_single_edges():
    e = path_graph(2)
    f_u = Polynomial.variable(0, 2)
    f_w = Polynomial.variable(1, 2)
    lhs, rhs = check_eq1(f_u, f_w, e, e)
    union = Graph(4, [(0, 1), (2, 3)])
    assert lhs == naive_ds(Polynomial.monomial((1, 0, 0, 1)), union)
    assert lhs == rhs == math.comb(4, 2) * 1 * -1


def test_eq1_low_degree_side_vanishes():
    g_u, g_w = path_graph(3), path_graph(2)
    f_u = Polynomial.variable(0, 3)  # degree 1 < 2 edges
    f_w = Polynomial.variable(0, 2) ** 2
    lhs, rhs = check_eq1(f_u, f_w, g_u, g_w)
    assert lhs == rhs == 0


def test_eq1_edgeless_components():
    one = Polynomial.constant(1, 1)
    lhs, rhs = check_eq1(one, one, path_graph(1), path_graph(1))
    assert lhs == rhs == 2


def test_eq1_degree_precondition():
    with pytest.raises(PreconditionError):
        check_eq1(Polynomial.variable(0, 2) ** 2, Polynomial.variable(0, 2), path_graph(2), path_graph(2))


def test_edge_product():
    x = xs(3)
    assert edge_product([(0, 1), (1, 2)], 3) == (x[0] - x[1]) * (x[1] - x[2])


def test_chunk_bounds_cover_range():
    for total, chunks in [(5040, 7), (6, 10), (1, 1), (720, 4)]:
        b = chunk_bounds(total, chunks)
        assert b[0][0] == 0 and b[-1][1] == total
        assert all(hi == lo2 for (_, hi), (lo2, _) in zip(b, b[1:]))


def test_parallel_matches_serial():
    rng = random.Random(7)
    g = random_graph(7, rng, 0.5)
    f = random_polynomial(7, len(g.edges), rng)
    pt = random_distinct_point(7, rng)
    serial = ds_constant(f, g, pt)
    from divsym import engine

    engine._table.cache_clear()
    assert ds_constant(f, g, pt, workers=2) == serial
