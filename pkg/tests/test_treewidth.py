import random

import networkx as nx
import pytest
from networkx.algorithms.approximation import treewidth_min_fill_in

from src.errors import ResourceCapError, ValidationError
from src.graph import Graph
from src.tensor_network import line_graph, tensor_network_graph
from src.treewidth import (
    TreeDecomposition,
    elimination_width,
    tree_decomposition_from_order,
    treewidth_exact,
    treewidth_minfill_ub,
)


def _complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def _cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


@pytest.mark.parametrize(
    "graph, expected",
    [(_complete(4), 3), (_path(3), 1), (_cycle(5), 2), (Graph.empty(3), 0), (Graph.empty(0), 0)],
)
def test_exact_treewidth_examples(graph, expected):
    width, decomposition = treewidth_exact(graph)

    assert width == expected
    assert decomposition.width == expected
    decomposition.validate(graph)


@pytest.mark.parametrize(
    "graph, expected",
    [(_complete(4), 3), (Graph.empty(4), 0), (_cycle(5), 2)],
)
def test_minfill_examples(graph, expected):
    width, order = treewidth_minfill_ub(graph)

    assert width == expected
    assert sorted(order) == list(range(graph.n))
    assert elimination_width(graph, order) == width


def test_exact_treewidth_refuses_large_graphs():
    with pytest.raises(ResourceCapError, match="supera el límite") as excinfo:
        treewidth_exact(_path(15))

    assert excinfo.value.limit == 14
    assert excinfo.value.actual == 15


def test_minfill_bounds_exact_and_agrees_with_networkx(random_graph):
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 9)
        graph = Graph.from_edges(n, random_graph(rng, n))
        exact, decomposition = treewidth_exact(graph)
        upper, order = treewidth_minfill_ub(graph)

        assert upper >= exact
        decomposition.validate(graph)
        tree_decomposition_from_order(graph, order).validate(graph)
        assert tree_decomposition_from_order(graph, order).width == upper
        reference, _ = treewidth_min_fill_in(graph.to_networkx())
        assert reference >= exact


def test_decomposition_validation_detects_uncovered_edge():
    decomposition = TreeDecomposition(
        (frozenset({0, 1}), frozenset({2})), ((0, 1),)
    )

    with pytest.raises(ValidationError, match="no está cubierta"):
        decomposition.validate(_path(3))


def test_decomposition_validation_detects_disconnected_vertex_bags():
    decomposition = TreeDecomposition(
        (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 3})),
        ((0, 1), (1, 2)),
    )

    with pytest.raises(ValidationError, match="no son conexas"):
        decomposition.validate(Graph.from_edges(4, [(0, 1), (1, 2), (0, 3)]))


def test_elimination_width_rejects_non_permutation():
    with pytest.raises(ValidationError, match="permutación"):
        elimination_width(_path(3), [0, 1, 1])


def test_variable_graph_treewidth_is_bounded_by_line_graph(random_cases):
    checked = 0
    for circuit, _, _, instance in random_cases(31, 200, max_qubits=4, max_gates=10):
        lines = line_graph(tensor_network_graph(circuit))
        if lines.graph.n > 12:
            continue
        sop_width, _ = treewidth_exact(instance.graph)
        line_width, _ = treewidth_exact(lines.graph)

        assert sop_width <= line_width
        checked += 1

    assert checked >= 100


def test_networkx_minor_relation_on_reference_circuit(example_circuit, example_instance):
    lines = line_graph(tensor_network_graph(example_circuit))

    assert treewidth_exact(example_instance.graph)[0] == 1
    assert treewidth_exact(lines.graph)[0] == 3
    assert nx.is_connected(lines.graph.to_networkx())
