import random

import networkx as nx
import pytest

from src.errors import FormatParseError, ValidationError
from src.graph import (
    BitMatrix,
    Graph,
    GraphParser,
    cut_rank,
    gf2_rank,
    iter_bits,
    mask_of,
    popcount,
)


def _path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def _span_size(rows):
    span = {0}
    for row in rows:
        span |= {value ^ row for value in span}
    return len(span)


def test_bit_helpers():
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert mask_of([0, 3, 5]) == 0b101001
    assert popcount(0b101001) == 3


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
        ([[1, 1, 1], [1, 1, 1], [1, 1, 1]], 1),
        ([[1, 1, 0], [0, 1, 1], [1, 0, 1]], 2),
        ([], 0),
    ],
)
def test_gf2_rank_examples(rows, expected):
    matrix = BitMatrix.from_lists(rows)

    assert gf2_rank(matrix) == expected


def test_gf2_rank_matches_row_span_enumeration():
    rng = random.Random(7)
    for _ in range(60):
        rows = [rng.getrandbits(6) for _ in range(rng.randint(0, 6))]

        assert 2 ** gf2_rank(rows) == _span_size(rows)


def test_bit_matrix_rejects_ragged_rows():
    with pytest.raises(ValidationError, match="rectangular"):
        BitMatrix.from_lists([[1, 0], [1]])


def test_cut_rank_examples():
    assert cut_rank(_path(3), {0}) == 1
    assert cut_rank(_complete(4), {1, 3}) == 1
    assert cut_rank(_complete(4), 0) == 0
    assert cut_rank(_path(5), set()) == 0


def test_cut_rank_is_symmetric_and_bounded():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 9)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        graph = Graph.from_edges(n, edges)
        subset = rng.getrandbits(n)
        rank = cut_rank(graph, subset)

        assert rank == cut_rank(graph, graph.full_mask & ~subset)
        assert rank <= min(popcount(subset), n - popcount(subset))


def test_cut_rank_rejects_unknown_vertices():
    with pytest.raises(ValidationError, match="inexistentes"):
        cut_rank(_path(3), {5})


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(ValidationError, match="Lazo"):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(ValidationError, match="no simétrica"):
        Graph(2, (0b10, 0b00))


def test_graph_queries_and_networkx_round_trip():
    graph = Graph.from_edges(4, [(2, 0), (0, 1), (1, 2), (2, 3)])

    assert graph.edges() == [(0, 1), (0, 2), (1, 2), (2, 3)]
    assert graph.edge_count == 4
    assert graph.neighbors(2) == [0, 1, 3]
    assert graph.degree(3) == 1
    assert graph.has_edge(3, 2) and not graph.has_edge(0, 3)
    assert Graph.from_networkx(graph.to_networkx()) == graph
    assert nx.is_isomorphic(graph.to_networkx(), nx.tadpole_graph(3, 1))


def test_graph_file_round_trip():
    text = "# camino\nvertices 3\nedge 0 1\nedge 1 2\n"
    graph = GraphParser.parse(text)

    assert graph == _path(3)
    assert GraphParser.to_text(graph) == "vertices 3\nedge 0 1\nedge 1 2"


@pytest.mark.parametrize(
    "text, message",
    [
        ("edge 0 1", "debe preceder"),
        ("vertices 2\nedge 0 2", "inválida"),
        ("vertices 2\narco 0 1", "no reconocida"),
        ("vertices x", "enteros"),
        ("", "falta la directiva"),
    ],
)
def test_graph_parser_errors(text, message):
    with pytest.raises(FormatParseError, match=message):
        GraphParser.parse(text)
