import random

import networkx as nx
import pytest

from src.bucket import sopcount_bucket
from src.errors import ValidationError
from src.families import blowup, circuit_from_graph, complete_binary_tree, separating_family
from src.graph import Graph
from src.models import amplitude_from_counts
from src.oracles import statevector_amplitude
from src.rank_decomposition import (
    decomposition_width,
    linear_rankwidth_exact,
    root_decomposition,
    validate_decomposition,
)
from src.sop import extract_sop
from src.sop_dp import sopcount_rank_dp
from src.treewidth import treewidth_exact, treewidth_minfill_ub


def _realized_graph(circuit):
    zeros = "0" * circuit.n_qubits
    return extract_sop(circuit, zeros, zeros).graph


@pytest.mark.parametrize(
    "graph, gates",
    [
        (Graph.from_edges(3, [(0, 1), (1, 2)]), 8),
        (Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 9),
        (Graph.empty(4), 8),
    ],
)
def test_circuit_from_graph_examples(graph, gates):
    circuit = circuit_from_graph(graph)

    assert circuit.n_qubits == graph.n
    assert len(circuit.gates) == gates
    assert _realized_graph(circuit).edges() == graph.edges()


def test_circuit_from_graph_realizes_random_graphs(random_graph):
    rng = random.Random(73)
    for _ in range(60):
        n = rng.randint(1, 8)
        graph = Graph.from_edges(n, random_graph(rng, n, 0.5))
        circuit = circuit_from_graph(graph)

        assert len(circuit.gates) == 2 * n + graph.edge_count
        assert _realized_graph(circuit).edges() == graph.edges()


def test_circuit_from_graph_needs_vertices():
    with pytest.raises(ValidationError, match="al menos un vértice"):
        circuit_from_graph(Graph.empty(0))


def test_complete_binary_tree_sizes():
    for height in range(5):
        tree = complete_binary_tree(height)
        assert tree.n == 2 ** (height + 1) - 1
        assert tree.edge_count == tree.n - 1
        assert nx.is_tree(tree.to_networkx())
    with pytest.raises(ValidationError):
        complete_binary_tree(-1)


def test_blowup_examples():
    star = blowup(complete_binary_tree(1), 2)
    triangles = blowup(Graph.empty(2), 3)
    path = Graph.from_edges(3, [(0, 1), (1, 2)])

    assert (star.n, star.edge_count) == (6, 11)
    assert triangles.edges() == [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    assert blowup(path, 1).edges() == path.edges()
    with pytest.raises(ValidationError):
        blowup(path, 0)


@pytest.mark.parametrize("height", [0, 1, 2, 3])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_separating_family_graph_and_witness(height, t):
    family = separating_family(height, t)

    assert family.params == (height, t)
    assert _realized_graph(family.circuit).edges() == family.graph.edges()
    assert family.graph.edges() == blowup(complete_binary_tree(height), t).edges()
    validate_decomposition(family.graph, family.witness)
    assert decomposition_width(family.graph, family.witness) <= 2


def test_separating_family_rejects_bad_parameters():
    with pytest.raises(ValidationError, match="h >= 0"):
        separating_family(-1, 2)
    with pytest.raises(ValidationError, match="t >= 1"):
        separating_family(1, 0)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_single_level_family_treewidth_grows_with_clique_size(t):
    width, _ = treewidth_exact(separating_family(1, t).graph)

    assert width == 2 * t - 1


def test_larger_family_contains_a_big_clique():
    graph = separating_family(2, 4).graph.to_networkx()

    # dos cliques adyacentes forman un K_8, así que la treewidth es al menos 7
    assert max(len(clique) for clique in nx.find_cliques(graph)) == 8


def test_small_family_matches_statevector():
    family = separating_family(1, 2)
    zeros = "0" * family.circuit.n_qubits
    instance = extract_sop(family.circuit, zeros, zeros)
    counts = sopcount_rank_dp(instance, root_decomposition(family.witness))
    amplitude = amplitude_from_counts(counts, instance.hadamard_count).numeric

    assert abs(amplitude - statevector_amplitude(family.circuit, zeros, zeros)) <= 1e-9


def test_family_witness_drives_rank_dp_on_many_variables():
    medium = separating_family(2, 3)
    zeros = "0" * medium.circuit.n_qubits
    medium_instance = extract_sop(medium.circuit, zeros, zeros)
    assert sopcount_rank_dp(
        medium_instance, root_decomposition(medium.witness)
    ) == sopcount_bucket(medium_instance)

    large = separating_family(3, 3)
    zeros = "0" * large.circuit.n_qubits
    instance = extract_sop(large.circuit, zeros, zeros)
    counts = sopcount_rank_dp(instance, root_decomposition(large.witness))

    assert instance.n_vars == 45
    assert counts.total == 2**45
    assert abs(amplitude_from_counts(counts, instance.hadamard_count).numeric) <= 1 + 1e-9


def test_witness_width_stays_flat_while_treewidth_grows():
    bounds = []
    for t in (1, 2, 3):
        family = separating_family(2, t)
        bounds.append(treewidth_minfill_ub(family.graph)[0])
        assert decomposition_width(family.graph, family.witness) == 1

    assert bounds == [1, 3, 5]
    assert linear_rankwidth_exact(separating_family(2, 1).graph) == 1
