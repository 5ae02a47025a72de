"""Coin robbing on a cycle of m vertices.

While some vertex holds at least two coins, one such vertex (chosen by a
policy) passes one coin to its left (index - 1) or right (index + 1)
neighbour, each with probability 1/2.  With n < m coins the process stops
almost surely in a configuration of zeros and ones.

Exact absorption probabilities come from solving the harmonic system
p(s) = p(s_left)/2 + p(s_right)/2 over the reachable states.  The state graph
may contain directed cycles, so the system is solved exactly, one strongly
connected block at a time in reverse topological order.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx
import numpy as np

from divsym.errors import CapExceeded, InputError, PreconditionError
from divsym.linalg import solve

DEFAULT_MAX_STATES = 10**5
DEFAULT_STEP_CAP = 10**7
BLOCK_SIZE = 1024
POLICIES = ("lowest", "highest", "random")


def validate_config(counts: Sequence[int]) -> tuple:
    counts = tuple(int(c) for c in counts)
    if not counts:
        raise PreconditionError("configuration must have at least one vertex")
    if any(c < 0 for c in counts):
        raise PreconditionError(f"coin counts must be nonnegative: {counts}")
    if sum(counts) >= len(counts) and sum(counts) > 0:
        raise PreconditionError(
            f"{sum(counts)} coins on {len(counts)} vertices: need at least one empty vertex"
        )
    return counts


def config_from_json(obj) -> tuple:
    try:
        counts = [int(c) for c in obj["counts"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed config JSON: {exc}") from exc
    try:
        return validate_config(counts)
    except PreconditionError as exc:
        raise InputError(str(exc)) from exc


@dataclass(frozen=True)
class RobPolicy:
    """Which robbable vertex to rob.  ``random`` is a fixed pseudo-random
    function of (seed, state), so it is still a deterministic policy."""

    name: str = "lowest"
    seed: int = 0

    def __post_init__(self):
        if self.name not in POLICIES:
            raise PreconditionError(f"unknown policy {self.name!r}; choose from {POLICIES}")

    def choose(self, counts: Sequence[int]):
        robbable = [i for i, c in enumerate(counts) if c >= 2]
        if not robbable:
            return None
        if self.name == "lowest":
            return robbable[0]
        if self.name == "highest":
            return robbable[-1]
        return random.Random(f"{self.seed}:{tuple(counts)}").choice(robbable)


def rob(counts: Sequence[int], v: int, direction: str) -> tuple:
    m = len(counts)
    if not 0 <= v < m:
        raise PreconditionError(f"vertex {v} out of range")
    if counts[v] < 2:
        raise PreconditionError(f"vertex {v} holds {counts[v]} coins; need at least 2")
    if direction == "left":
        u = (v - 1) % m
    elif direction == "right":
        u = (v + 1) % m
    else:
        raise PreconditionError(f"direction must be 'left' or 'right', got {direction!r}")
    out = list(counts)
    out[v] -= 1
    out[u] += 1
    return tuple(out)


def is_final(counts: Sequence[int]) -> bool:
    return max(counts, default=0) <= 1


@dataclass
class AbsorptionResult:
    """Exact distribution over final configurations."""

    dist: dict = field(default_factory=dict)

    def prob_empty(self, v: int) -> Fraction:
        return sum((p for f, p in self.dist.items() if f[v] == 0), Fraction(0))

    def prob_empty_set(self, empty: Sequence[int]) -> Fraction:
        empty = set(empty)
        return sum(
            (p for f, p in self.dist.items() if {i for i, c in enumerate(f) if c == 0} == empty),
            Fraction(0),
        )

    def to_json(self) -> list:
        return [
            {"final": list(f), "prob": [str(p.numerator), str(p.denominator)]}
            for f, p in sorted(self.dist.items())
        ]


def explore(counts: Sequence[int], policy: RobPolicy, max_states: int = DEFAULT_MAX_STATES):
    """Breadth-first reachable state graph.

    Returns ``(order, succ)``: states in discovery order and, for each
    transient state, its (left, right) successors.
    """
    start = validate_config(counts)
    order, succ = [start], {}
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        v = policy.choose(s)
        if v is None:
            continue
        pair = (rob(s, v, "left"), rob(s, v, "right"))
        succ[s] = pair
        for t in pair:
            if t not in seen:
                seen.add(t)
                if len(seen) > max_states:
                    raise CapExceeded(f"more than {max_states} reachable states")
                order.append(t)
                queue.append(t)
    return order, succ


def absorption_table(counts, policy: RobPolicy | None = None, max_states=DEFAULT_MAX_STATES):
    """Exact final-configuration distribution for every reachable state."""
    policy = policy or RobPolicy()
    order, succ = explore(counts, policy, max_states)
    sol = {s: {s: Fraction(1)} for s in order if s not in succ}
    g = nx.DiGraph()
    g.add_nodes_from(succ)
    for s, pair in succ.items():
        g.add_edges_from((s, t) for t in pair if t in succ)
    cond = nx.condensation(g)
    half = Fraction(1, 2)
    for block_id in reversed(list(nx.topological_sort(cond))):
        block = sorted(cond.nodes[block_id]["members"])
        idx = {s: i for i, s in enumerate(block)}
        k = len(block)
        a = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
        rhs = [dict() for _ in range(k)]
        for s in block:
            i = idx[s]
            for t in succ[s]:
                if t in idx:
                    a[i][idx[t]] -= half
                else:
                    for f, p in sol[t].items():
                        rhs[i][f] = rhs[i].get(f, 0) + half * p
        if k == 1 and a[0][0] == 1:
            sol[block[0]] = rhs[0]
            continue
        cols = sorted(set().union(*rhs))
        x = solve(a, [[r.get(f, 0) for f in cols] for r in rhs])
        for s in block:
            sol[s] = {f: v for f, v in zip(cols, x[idx[s]]) if v}
    return sol, succ


def exact_absorption(counts, policy: RobPolicy | None = None, max_states=DEFAULT_MAX_STATES):
    start = validate_config(counts)
    sol, _ = absorption_table(start, policy, max_states)
    return AbsorptionResult(dict(sorted(sol[start].items())))


def prob_vertex_empty(counts, v: int, policy: RobPolicy | None = None, **kwargs) -> Fraction:
    """Probability that vertex ``v`` ends empty; requires m == n + 1."""
    counts = validate_config(counts)
    if len(counts) != sum(counts) + 1:
        raise PreconditionError(
            f"need m = n + 1, got m = {len(counts)} with n = {sum(counts)} coins"
        )
    if not 0 <= v < len(counts):
        raise PreconditionError(f"vertex {v} out of range")
    return exact_absorption(counts, policy, **kwargs).prob_empty(v)


def policy_invariance_check(counts, policy_a: RobPolicy, policy_b: RobPolicy, **kwargs) -> bool:
    return (
        exact_absorption(counts, policy_a, **kwargs).dist
        == exact_absorption(counts, policy_b, **kwargs).dist
    )


# Monte Carlo


def block_rng(seed: int, block: int) -> random.Random:
    """Stream for trials ``block * BLOCK_SIZE ..`` of a run seeded with ``seed``.

    The splitting rule is numpy's SeedSequence on the entropy pair
    (seed, block); the first 128 generated bits seed a Mersenne Twister.
    """
    state = np.random.SeedSequence([seed, block]).generate_state(4, dtype=np.uint32)
    return random.Random(int.from_bytes(state.tobytes(), "little"))


def _run_block(args):
    counts, seed, block, ntrials, policy, step_cap = args
    rng = block_rng(seed, block)
    m = len(counts)
    getbit = rng.getrandbits
    tally = Counter()
    for _ in range(ntrials):
        s = list(counts)
        steps = 0
        while True:
            v = policy.choose(s)
            if v is None:
                break
            steps += 1
            if steps > step_cap:
                raise CapExceeded(f"trial exceeded {step_cap} robbing steps")
            s[v] -= 1
            s[(v + 1) % m if getbit(1) else (v - 1) % m] += 1
        tally[tuple(s)] += 1
    return tally


@dataclass
class SimulationResult:
    trials: int
    counts: dict

    def freq(self, final) -> float:
        return self.counts.get(tuple(final), 0) / self.trials

    def stderr(self, p: float) -> float:
        return math.sqrt(p * (1 - p) / self.trials)

    def empty_count(self, v: int) -> int:
        return sum(k for f, k in self.counts.items() if f[v] == 0)

    def empty_set_count(self, empty) -> int:
        empty = set(empty)
        return sum(
            k for f, k in self.counts.items()
            if {i for i, c in enumerate(f) if c == 0} == empty
        )

    def to_json(self) -> list:
        out = []
        for f, k in sorted(self.counts.items()):
            p = k / self.trials
            out.append({"final": list(f), "freq": p, "stderr": self.stderr(p), "trials": self.trials})
        return out


def simulate(
    counts,
    seed: int,
    trials: int,
    policy: RobPolicy | None = None,
    *,
    workers: int = 1,
    step_cap: int = DEFAULT_STEP_CAP,
) -> SimulationResult:
    """Seeded Monte Carlo run of the robbing process.

    Trials are grouped into fixed blocks of BLOCK_SIZE, each with its own
    derived stream, so the output does not depend on ``workers``.
    """
    counts = validate_config(counts)
    policy = policy or RobPolicy()
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    if not 0 <= seed < 2**64:
        raise PreconditionError("seed must be a 64-bit unsigned integer")
    jobs = []
    for block, lo in enumerate(range(0, trials, BLOCK_SIZE)):
        jobs.append((counts, seed, block, min(BLOCK_SIZE, trials - lo), policy, step_cap))
    total = Counter()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for tally in pool.map(_run_block, jobs):
                total.update(tally)
    else:
        for job in jobs:
            total.update(_run_block(job))
    return SimulationResult(trials, dict(sorted(total.items())))
