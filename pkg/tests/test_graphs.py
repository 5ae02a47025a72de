import random

import pytest

from divsym.errors import InputError, PreconditionError
from divsym.graphs import (
    Graph,
    components_after_removal,
    cycle_graph,
    path_graph,
    random_tree,
    validate_tree,
)


def test_path_and_cycle():
    assert path_graph(3).edges == ((0, 1), (1, 2))
    assert set(cycle_graph(3).edges) == {(0, 1), (1, 2), (0, 2)}
    assert path_graph(1).edges == ()
    with pytest.raises(PreconditionError):
        cycle_graph(2)


def test_validate_tree():
    validate_tree(path_graph(4))
    with pytest.raises(PreconditionError):
        validate_tree(cycle_graph(3))
    with pytest.raises(PreconditionError):
        validate_tree(Graph(4, [(0, 1), (2, 3)]))


def test_edges_normalized_and_checked():
    g = Graph(3, [(2, 1), (1, 0)])
    assert g.edges == ((0, 1), (1, 2))
    for bad in ([(0, 0)], [(0, 3)], [(0, 1), (1, 0)]):
        with pytest.raises(PreconditionError):
            Graph(3, bad)


def test_components():
    assert components_after_removal(path_graph(3), [(0, 1)]) == [{0}, {1, 2}]
    assert components_after_removal(path_graph(3), []) == [{0, 1, 2}]
    assert len(components_after_removal(cycle_graph(4), [(1, 2)])) == 1
    with pytest.raises(PreconditionError):
        components_after_removal(path_graph(3), [(0, 2)])


@pytest.mark.parametrize("seed", range(20))
def test_tree_edge_split(seed):
    rng = random.Random(seed)
    t = validate_tree(random_tree(rng.randint(2, 9), rng))
    for e in t.edges:
        parts = components_after_removal(t, [e])
        assert len(parts) == 2
        assert sum(map(len, parts)) == t.m
        assert parts[0].isdisjoint(parts[1])
        assert parts[0] | parts[1] == set(range(t.m))


def test_graph_json():
    g = cycle_graph(4)
    assert Graph.from_json(g.to_json()) == g
    with pytest.raises(InputError):
        Graph.from_json({"m": 3, "edges": [[1, 0]]})
    with pytest.raises(InputError):
        Graph.from_json({"m": 3, "edges": [[0, 5]]})
