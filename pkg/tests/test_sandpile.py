import math
import random
from fractions import Fraction

import pytest

from divsym.engine import ds_constant
from divsym.errors import CapExceeded, InputError, PreconditionError
from divsym.graphs import path_graph
from divsym.instances import random_coin_config
from divsym.linalg import solve
from divsym.poly import compositions, prefix_sum_monomial
from divsym.sandpile import (
    AbsorptionResult,
    RobPolicy,
    absorption_table,
    config_from_json,
    exact_absorption,
    explore,
    is_final,
    policy_invariance_check,
    prob_vertex_empty,
    rob,
    simulate,
)


def test_rob_examples():
    assert rob((2, 0, 0), 0, "right") == (1, 1, 0)
    assert rob((2, 0, 0), 0, "left") == (1, 0, 1)
    with pytest.raises(PreconditionError):
        rob((1, 1, 0), 0, "right")
    with pytest.raises(PreconditionError):
        rob((2, 0, 0), 0, "up")


def test_is_final():
    assert is_final((1, 1, 0))
    assert not is_final((2, 0, 0))
    assert is_final((1, 1, 1, 1, 0))


def test_config_validation():
    with pytest.raises(PreconditionError):
        exact_absorption((2, 1))
    with pytest.raises(PreconditionError):
        exact_absorption((-1, 0, 0))
    with pytest.raises(InputError):
        config_from_json({"counts": [3, 0, 0]})
    assert config_from_json({"counts": [2, 0, 0]}) == (2, 0, 0)


def test_exact_small():
    assert exact_absorption((1, 1, 1, 0)).dist == {(1, 1, 1, 0): 1}
    assert exact_absorption((2, 0, 0)).dist == {(1, 1, 0): Fraction(1, 2), (1, 0, 1): Fraction(1, 2)}
    assert exact_absorption((0, 2, 0)).dist == {(1, 1, 0): Fraction(1, 2), (0, 1, 1): Fraction(1, 2)}


def test_state_cap():
    with pytest.raises(CapExceeded):
        exact_absorption((4, 0, 0, 0, 0), max_states=5)


def test_cyclic_state_graph_is_handled():
    # the lone surplus coin can wander back and forth: state graph has cycles
    _, succ = explore((2, 1, 1, 0, 0, 0), RobPolicy())
    start = (2, 1, 1, 0, 0, 0)
    reach_back = any(start in pair for pair in succ.values())
    assert reach_back
    res = exact_absorption(start)
    assert sum(res.dist.values()) == 1


def test_prob_vertex_empty_examples():
    assert prob_vertex_empty((1, 1, 1, 1, 0), 4) == 1
    assert prob_vertex_empty((1, 1, 0, 1), 3) == 0
    assert prob_vertex_empty((2, 0, 0), 2) == Fraction(1, 2)
    assert ds_constant(prefix_sum_monomial((2, 0, 0)), path_graph(3)) / 2 == Fraction(1, 2)
    with pytest.raises(PreconditionError):
        prob_vertex_empty((1, 0, 0, 0), 3)


@pytest.mark.parametrize("n", range(0, 5))
def test_absorption_matches_prefix_sum_ds(n):
    for c in compositions(n, n + 1):
        lhs = prob_vertex_empty(c, n)
        rhs = ds_constant(prefix_sum_monomial(c), path_graph(n + 1)) / math.factorial(n)
        assert lhs == rhs, c


@pytest.mark.parametrize("seed", range(10))
def test_distribution_properties_and_harmonicity(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    m = n + rng.randint(1, 2)
    c = random_coin_config(m, n, rng)
    table, succ = absorption_table(c)
    for s, dist in table.items():
        assert sum(dist.values()) == 1
        assert all(p > 0 for p in dist.values())
        assert all(is_final(f) for f in dist)
    for s, (left, right) in succ.items():
        for v in range(m):
            ps = AbsorptionResult(table[s]).prob_empty(v)
            pl = AbsorptionResult(table[left]).prob_empty(v)
            pr = AbsorptionResult(table[right]).prob_empty(v)
            assert ps == (pl + pr) / 2


@pytest.mark.parametrize("seed", range(10))
def test_conservation_and_monotone_support(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    c = random_coin_config(n + 1, n, rng)
    _, succ = explore(c, RobPolicy("random", seed))
    for s, pair in succ.items():
        for t in pair:
            assert sum(t) == sum(s)
            assert sum(1 for v in t if v) >= sum(1 for v in s if v)


def test_policy_invariance_examples():
    assert policy_invariance_check((3, 0, 0, 0), RobPolicy("lowest"), RobPolicy("highest"))
    assert policy_invariance_check((1, 1, 0), RobPolicy("lowest"), RobPolicy("random", 3))


@pytest.mark.parametrize("seed", range(8))
def test_policy_invariance_random(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    c = random_coin_config(n + rng.randint(1, 2), n, rng)
    assert policy_invariance_check(c, RobPolicy("highest"), RobPolicy("random", seed))


def test_policy_names():
    with pytest.raises(PreconditionError):
        RobPolicy("middle")
    assert RobPolicy().choose((1, 1, 0)) is None
    assert RobPolicy("highest").choose((2, 0, 2, 0, 0)) == 2


def test_solve_exact():
    x = solve([[2, 1], [1, 3]], [[3, 1], [5, 0]])
    assert x == [[Fraction(4, 5), Fraction(3, 5)], [Fraction(7, 5), Fraction(-1, 5)]]
    with pytest.raises(PreconditionError):
        solve([[1, 2], [2, 4]], [[1], [2]])


def test_simulate_deterministic():
    a = simulate((2, 1, 0, 0), seed=11, trials=3000)
    b = simulate((2, 1, 0, 0), seed=11, trials=3000)
    assert a.to_json() == b.to_json()
    assert simulate((2, 1, 0, 0), seed=12, trials=3000).counts != a.counts


def test_simulate_workers_irrelevant():
    a = simulate((3, 0, 0, 0, 0), seed=5, trials=2500)
    b = simulate((3, 0, 0, 0, 0), seed=5, trials=2500, workers=2)
    assert a.counts == b.counts


def test_simulate_final_start():
    r = simulate((1, 1, 0), seed=0, trials=10)
    assert r.counts == {(1, 1, 0): 10}


def test_simulate_step_cap():
    with pytest.raises(CapExceeded):
        simulate((3, 0, 0, 0), seed=0, trials=5, step_cap=1)


def test_simulate_bad_args():
    with pytest.raises(PreconditionError):
        simulate((2, 0, 0), seed=0, trials=0)
    with pytest.raises(PreconditionError):
        simulate((2, 0, 0), seed=-1, trials=1)


def test_simulate_close_to_exact():
    r = simulate((2, 0, 0), seed=2024, trials=10**5)
    p = 0.5
    se = math.sqrt(p * (1 - p) / r.trials)
    assert abs(r.empty_count(2) / r.trials - p) <= 4 * se
