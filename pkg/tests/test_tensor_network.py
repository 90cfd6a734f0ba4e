import networkx as nx

from src.circuit_parser import parse_circuit
from src.tensor_network import Bond, line_graph, tensor_network_graph


def test_reference_network_has_nine_gates_and_eight_bonds(example_circuit):
    network = tensor_network_graph(example_circuit)

    assert network.graph.n == 9
    assert network.graph.edge_count == 8
    assert len(network.bonds) == 8
    assert "e_{4,5}" in network.labels
    assert network.bonds[0] == Bond(0, 3, 0)


def test_empty_and_single_segment_networks():
    empty = tensor_network_graph(parse_circuit("qubits 2"))
    pair = tensor_network_graph(parse_circuit("qubits 1\nh 0\nh 0"))

    assert empty.graph.n == 0
    assert empty.bonds == ()
    assert pair.graph.n == 2
    assert pair.graph.edges() == [(0, 1)]
    assert line_graph(pair).graph.n == 1
    assert line_graph(pair).graph.edge_count == 0


def test_reference_line_graph_structure(example_circuit):
    lines = line_graph(tensor_network_graph(example_circuit))

    assert lines.graph.n == 8
    assert lines.has_edge("e_{5,6}", "e_{6,8}")
    # dos K_4 (una por cada CZ) que comparten el bond e_{4,5}
    first = ["e_{1,4}", "e_{2,4}", "e_{4,5}", "e_{4,7}"]
    second = ["e_{3,5}", "e_{4,5}", "e_{5,6}", "e_{5,9}"]
    for clique in (first, second):
        for i, a in enumerate(clique):
            for b in clique[i + 1:]:
                assert lines.has_edge(a, b)
    assert not lines.has_edge("e_{1,4}", "e_{3,5}")
    assert lines.graph.edge_count == 13


def test_parallel_bonds_collapse_in_network_but_not_in_line_graph():
    network = tensor_network_graph(parse_circuit("qubits 2\ncz 0 1\ncz 0 1"))

    assert network.graph.edge_count == 1
    assert network.labels == ("e_{1,2}@q0", "e_{1,2}@q1")
    assert network.to_multigraph().number_of_edges() == 2
    lines = line_graph(network)
    assert lines.graph.n == 2
    assert lines.has_edge("e_{1,2}@q0", "e_{1,2}@q1")


def test_line_graph_matches_networkx_for_simple_networks(random_cases):
    for circuit, _, _, _ in random_cases(17, 40, max_gates=10):
        network = tensor_network_graph(circuit)
        if network.graph.edge_count != len(network.bonds):
            continue
        expected = nx.line_graph(network.graph.to_networkx())

        assert nx.is_isomorphic(line_graph(network).graph.to_networkx(), expected)


def test_line_graph_adjacency_is_shared_gate_with_parallel_bonds(random_cases):
    circuits = [case[0] for case in random_cases(29, 200, max_gates=12)]
    circuits.append(parse_circuit("qubits 3\ncz 0 1\ncz 1 0\nh 2\ncz 0 2\nh 0"))
    for circuit in circuits:
        network = tensor_network_graph(circuit)
        lines = line_graph(network)

        assert lines.labels == network.labels
        for i, a in enumerate(network.bonds):
            for j, b in enumerate(network.bonds):
                if i == j:
                    continue
                shared = {a.left, a.right} & {b.left, b.right}
                assert lines.graph.has_edge(i, j) == bool(shared)
