"""Graphs on ordered vertices 0..m-1 with normalized edges (i, j), i < j.

The denominator factor attached to edge (i, j) is always ``x_i - x_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from divsym.errors import InputError, PreconditionError


def _normalize(e) -> tuple:
    i, j = (int(v) for v in e)
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    m: int
    edges: tuple

    def __init__(self, m: int, edges: Iterable = ()):
        m = int(m)
        if m < 1:
            raise PreconditionError(f"graph needs at least one vertex, got m={m}")
        norm = []
        for e in edges:
            i, j = _normalize(e)
            if i == j:
                raise PreconditionError(f"self-loop at vertex {i}")
            if j >= m or i < 0:
                raise PreconditionError(f"edge {(i, j)} out of range for m={m}")
            norm.append((i, j))
        if len(set(norm)) != len(norm):
            raise PreconditionError("duplicate edges")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def adjacency(self) -> list:
        adj = [[] for _ in range(self.m)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def is_connected(self) -> bool:
        return len(components_after_removal(self, ())) == 1

    def to_json(self) -> dict:
        return {"format": 1, "m": self.m, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "Graph":
        try:
            m = int(obj["m"])
            edges = [tuple(e) for e in obj["edges"]]
            if any(len(e) != 2 for e in edges):
                raise ValueError("edges must be pairs")
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed graph JSON: {exc}") from exc
        for e in edges:
            if e[0] >= e[1]:
                raise InputError(f"edge {list(e)} is not normalized (need i < j)")
        try:
            return cls(m, edges)
        except PreconditionError as exc:
            raise InputError(str(exc)) from exc


# A tree is just a Graph that passed validate_tree.
Tree = Graph


def path_graph(m: int) -> Graph:
    if m < 1:
        raise PreconditionError(f"path needs m >= 1, got {m}")
    return Graph(m, [(i, i + 1) for i in range(m - 1)])


def cycle_graph(m: int) -> Graph:
    if m < 3:
        raise PreconditionError(f"cycle needs m >= 3, got {m}")
    return Graph(m, [(i, i + 1) for i in range(m - 1)] + [(0, m - 1)])


def complete_graph(m: int) -> Graph:
    return Graph(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def disjoint_union(a: Graph, b: Graph) -> Graph:
    """Vertices of ``b`` are shifted by ``a.m``."""
    return Graph(a.m + b.m, list(a.edges) + [(i + a.m, j + a.m) for i, j in b.edges])


def validate_tree(g: Graph) -> Graph:
    if len(g.edges) != g.m - 1 or not g.is_connected():
        raise PreconditionError(
            f"not a tree: {g.m} vertices, {len(g.edges)} edges, "
            f"connected={g.is_connected()}"
        )
    return g


def components_after_removal(g: Graph, removed: Iterable) -> list:
    """Connected components of ``g`` minus ``removed``, as sorted frozensets.

    Components are ordered by their smallest vertex.
    """
    removed = {_normalize(e) for e in removed}
    missing = removed - set(g.edges)
    if missing:
        raise PreconditionError(f"edges {sorted(missing)} are not in the graph")
    parent = list(range(g.m))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        if e in removed:
            continue
        a, b = find(e[0]), find(e[1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    blocks = {}
    for v in range(g.m):
        blocks.setdefault(find(v), set()).add(v)
    return [frozenset(blocks[r]) for r in sorted(blocks)]


def random_tree(m: int, rng) -> Graph:
    """Uniform-ish random labelled tree: each vertex v > 0 attaches to a random earlier
    vertex, then labels are shuffled."""
    labels = list(range(m))
    rng.shuffle(labels)
    edges = [(labels[v], labels[rng.randrange(v)]) for v in range(1, m)]
    return Graph(m, edges)
