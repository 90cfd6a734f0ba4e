import itertools
import random

import pytest

from src.errors import (
    DegreeExceededError,
    FormatParseError,
    LeafMismatchError,
    NotATreeError,
    ResourceCapError,
)
from src.families import complete_binary_tree
from src.graph import Graph, cut_rank
from src.rank_decomposition import (
    RankDecomposition,
    breadth_first_order,
    caterpillar_from_order,
    decompose_greedy_bisection,
    decomposition_from_binary_tree,
    decomposition_width,
    linear_layout_width,
    linear_rankwidth_exact,
    parse_rdec,
    rankwidth_exact,
    root_decomposition,
    serialize_rdec,
    validate_decomposition,
)
from src.storage import read_text_limited


def _path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _complete(n):
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


STAR_P3 = "leaf a 0\nleaf b 1\nleaf c 2\nedge a x\nedge b x\nedge c x"


def test_parse_three_leaf_star():
    decomposition = parse_rdec(STAR_P3)

    assert decomposition.nodes == frozenset({"a", "b", "c", "x"})
    assert decomposition.leaf_map == {"a": 0, "b": 1, "c": 2}
    validate_decomposition(_path(3), decomposition)


@pytest.mark.parametrize(
    "text, message",
    [
        ("leaf a 0\nleaf b 0\nedge a b", "ya está asignado"),
        ("leaf a 0\nleaf a 1", "duplicada"),
        ("leaf a x", "no es un entero"),
        ("leaf a -1", "negativo"),
        ("rama a b", "no reconocida"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(FormatParseError, match=message):
        parse_rdec(text)


def test_reference_decomposition_file_round_trips(corpus_dir):
    text = read_text_limited(corpus_dir / "example_path.rdec")
    body = "\n".join(line for line in text.strip().split("\n") if not line.startswith("#"))

    assert serialize_rdec(parse_rdec(text)) == body


def test_validation_errors_name_the_offending_node():
    star = RankDecomposition.build([(leaf, "x") for leaf in "abcd"], {"a": 0, "b": 1, "c": 2, "d": 3})
    with pytest.raises(DegreeExceededError, match="grado 4") as excinfo:
        validate_decomposition(_complete(4), star)
    assert excinfo.value.node == "x"

    with pytest.raises(LeafMismatchError, match="vértice 2"):
        validate_decomposition(_path(3), parse_rdec("leaf a 0\nleaf b 1\nedge a b"))

    with pytest.raises(NotATreeError, match="no está conectado") as excinfo:
        validate_decomposition(_path(2), parse_rdec("leaf a 0\nleaf b 1"))
    assert excinfo.value.node == "b"

    with pytest.raises(NotATreeError, match="ciclo"):
        validate_decomposition(
            _path(3), parse_rdec("leaf a 0\nleaf b 1\nleaf c 2\nedge a b\nedge b c\nedge c a")
        )

    with pytest.raises(NotATreeError, match="lazo"):
        validate_decomposition(Graph.empty(1), parse_rdec("leaf a 0\nedge a a"))

    with pytest.raises(LeafMismatchError, match="fuera de rango"):
        validate_decomposition(_path(2), parse_rdec("leaf a 0\nleaf b 5\nedge a b"))


def test_decomposition_width_examples():
    assert decomposition_width(_path(3), caterpillar_from_order(_path(3), [0, 1, 2])) == 1
    assert decomposition_width(Graph.empty(5), decompose_greedy_bisection(Graph.empty(5))) == 0
    k4 = _complete(4)
    assert decomposition_width(k4, caterpillar_from_order(k4, [2, 0, 3, 1])) == 1
    assert decomposition_width(k4, decompose_greedy_bisection(k4)) == 1


def test_caterpillar_degenerate_cases():
    single = caterpillar_from_order(Graph.empty(1), [0])
    pair = caterpillar_from_order(_path(2), [1, 0])

    assert single.nodes == frozenset({"l0"})
    assert single.tree_edges == ()
    assert decomposition_width(Graph.empty(1), single) == 0
    assert pair.tree_edges == (("l0", "l1"),)
    assert decomposition_width(_complete(3), caterpillar_from_order(_complete(3), [1, 2, 0])) == 1


def test_rooting_examples(corpus_dir):
    pair = root_decomposition(caterpillar_from_order(_path(2), [0, 1]))
    assert len(pair.nodes) == 3
    assert all(pair.nodes[child].is_leaf for child in pair.root.children)
    assert pair.root.mask == 0b11

    single = root_decomposition(caterpillar_from_order(Graph.empty(1), [0]))
    assert single.root.vertex == 0
    assert single.root.mask == 0b1

    reference = parse_rdec(read_text_limited(corpus_dir / "example_path.rdec"))
    assert root_decomposition(reference).vertex_mask == 0b111


def test_rooting_avoids_existing_root_name():
    decomposition = parse_rdec("leaf root 0\nleaf b 1\nedge root b")
    rooted = root_decomposition(decomposition)

    assert rooted.root.name == "root_1"


def _check_rooted(graph, decomposition):
    width = decomposition_width(graph, decomposition)
    rooted = root_decomposition(decomposition)
    assert rooted.root.mask == graph.full_mask
    for node in rooted.nodes:
        if node.is_leaf:
            assert node.mask == 1 << node.vertex
            continue
        left, right = (rooted.nodes[child].mask for child in node.children)
        assert left & right == 0
        assert left | right == node.mask
    for node in rooted.nodes[:-1]:
        assert cut_rank(graph, node.mask) <= width


def test_rooted_decompositions_are_binary_partitions(random_graph):
    rng = random.Random(19)
    for _ in range(30):
        n = rng.randint(1, 10)
        graph = Graph.from_edges(n, random_graph(rng, n))
        _check_rooted(graph, decompose_greedy_bisection(graph))
        _check_rooted(graph, caterpillar_from_order(graph, breadth_first_order(graph)))


def test_linear_rankwidth_examples():
    assert linear_rankwidth_exact(complete_binary_tree(2)) == 1
    assert linear_rankwidth_exact(_path(4)) == 1
    assert linear_rankwidth_exact(Graph.empty(4)) == 0
    assert linear_layout_width(_path(4), [0, 1, 2, 3]) == 1
    assert linear_layout_width(_path(4), [0, 2, 1, 3]) == 2


@pytest.mark.parametrize(
    "graph, expected",
    [(_path(3), 1), (complete_binary_tree(2), 1), (Graph.empty(3), 0), (Graph.empty(0), 0)],
)
def test_exact_rankwidth_examples(graph, expected):
    width, decomposition = rankwidth_exact(graph)

    assert width == expected
    if graph.n:
        assert decomposition_width(graph, decomposition) == expected


def test_exact_solvers_refuse_large_graphs():
    with pytest.raises(ResourceCapError, match="rank-width exacta"):
        rankwidth_exact(_path(9))
    with pytest.raises(ResourceCapError, match="lineal exacta"):
        linear_rankwidth_exact(_path(9))


def test_greedy_bisection_examples():
    b2 = complete_binary_tree(2)
    width = decomposition_width(b2, decompose_greedy_bisection(b2))
    assert 1 <= width <= 2

    p8 = _path(8)
    greedy = decompose_greedy_bisection(p8)
    validate_decomposition(p8, greedy)
    assert decomposition_width(p8, greedy) >= 1


def test_width_relations_on_small_graphs(random_graph):
    rng = random.Random(23)
    graphs = [complete_binary_tree(2), _path(5), _complete(5)]
    graphs += [Graph.from_edges(n, random_graph(rng, n, 0.5)) for n in rng.choices(range(2, 7), k=40)]
    for graph in graphs:
        exact, _ = rankwidth_exact(graph)
        linear = linear_rankwidth_exact(graph)

        assert exact <= linear
        assert decomposition_width(graph, decompose_greedy_bisection(graph)) >= exact
        if graph.n <= 7:
            best = min(
                decomposition_width(graph, caterpillar_from_order(graph, order))
                for order in itertools.permutations(range(graph.n))
            )
            assert best == linear


def test_binary_tree_conversion_suppresses_the_root():
    decomposition = decomposition_from_binary_tree((0, (1, 2)), 3)

    assert decomposition.tree_edges == (("l0", "t0"), ("l1", "t0"), ("l2", "t0"))
    assert decomposition.leaf_map == {"l0": 0, "l1": 1, "l2": 2}


def test_breadth_first_order_visits_components_in_order():
    graph = Graph.from_edges(5, [(3, 4), (0, 2), (2, 1)])

    assert breadth_first_order(graph) == [0, 2, 1, 3, 4]
