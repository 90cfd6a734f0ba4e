"""
Descomposiciones de rango: representación, validación, anchura, enraizado,
construcción heurística y resolvedores exactos para grafos pequeños.

Formato `.rdec`:
leaf l0 0         # hoja l0 ↔ vértice 0 (orden canónico de variables)
edge l0 s2        # arista del árbol subcúbico
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import networkx as nx

from .errors import (
    DecompositionError,
    DegreeExceededError,
    FormatParseError,
    LeafMismatchError,
    NotATreeError,
    ResourceCapError,
    ValidationError,
)
from .graph import Graph, cut_rank, iter_bits, popcount

logger = logging.getLogger(__name__)

DEFAULT_MAX_EXACT_VERTICES = 8
ROOT_NODE_ID = "root"

# Árbol binario anidado: un vértice o un par de subárboles
BinaryTree = Union[int, tuple["BinaryTree", "BinaryTree"]]


@dataclass(frozen=True)
class RankDecomposition:
    """Árbol subcúbico (nodes, tree_edges) con hojas etiquetadas por vértices."""

    nodes: frozenset[str]
    tree_edges: tuple[tuple[str, str], ...]
    leaf_map: dict[str, int] = field(default_factory=dict)

    @classmethod
    def build(
        cls, edges: Iterable[tuple[str, str]], leaf_map: dict[str, int]
    ) -> "RankDecomposition":
        """Normaliza aristas (a < b, ordenadas, sin repetir) y deduce los nodos."""
        normalized = sorted({(min(a, b), max(a, b)) for a, b in edges})
        nodes = frozenset(leaf_map) | {node for edge in normalized for node in edge}
        return cls(nodes, tuple(normalized), dict(leaf_map))

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    def adjacency(self) -> dict[str, list[str]]:
        adjacency: dict[str, list[str]] = {node: [] for node in self.nodes}
        for a, b in self.tree_edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        for neighbors in adjacency.values():
            neighbors.sort()
        return adjacency


class RdecParser:
    """Lectura y escritura del formato `.rdec`."""

    MAX_CONTENT_CHARS = 4 * 1024 * 1024

    @classmethod
    def parse(cls, text: str) -> RankDecomposition:
        """
        Parsea una descomposición; la validación contra un grafo es aparte.

        Raises:
            FormatParseError: sintaxis, hoja repetida o vértice repetido
        """
        if len(text) > cls.MAX_CONTENT_CHARS:
            raise FormatParseError("la descomposición es demasiado grande")
        leaf_map: dict[str, int] = {}
        seen_vertices: dict[int, str] = {}
        edges: list[tuple[str, str]] = []
        for line_number, raw_line in enumerate(text.split("\n"), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            if tokens[0] == "leaf" and len(tokens) == 3:
                node = tokens[1]
                try:
                    vertex = int(tokens[2], 10)
                except ValueError:
                    raise FormatParseError(f"'{tokens[2]}' no es un entero", line_number) from None
                if vertex < 0:
                    raise FormatParseError(f"vértice negativo {vertex}", line_number)
                if node in leaf_map:
                    raise FormatParseError(f"hoja '{node}' duplicada", line_number)
                if vertex in seen_vertices:
                    raise FormatParseError(
                        f"el vértice {vertex} ya está asignado a la hoja '{seen_vertices[vertex]}'",
                        line_number,
                    )
                leaf_map[node] = vertex
                seen_vertices[vertex] = node
            elif tokens[0] == "edge" and len(tokens) == 3:
                edges.append((tokens[1], tokens[2]))
            else:
                raise FormatParseError(f"línea no reconocida: '{line}'", line_number)

        normalized = sorted({(min(a, b), max(a, b)) for a, b in edges})
        nodes = frozenset(leaf_map) | {node for edge in normalized for node in edge}
        # los lazos se conservan para que la validación los reporte
        return RankDecomposition(nodes, tuple(normalized), leaf_map)

    @classmethod
    def to_text(cls, decomposition: RankDecomposition) -> str:
        """Forma canónica: hojas por vértice, luego aristas ordenadas."""
        lines = [
            f"leaf {node} {vertex}"
            for node, vertex in sorted(decomposition.leaf_map.items(), key=lambda item: item[1])
        ]
        lines.extend(f"edge {a} {b}" for a, b in decomposition.tree_edges)
        return "\n".join(lines)


parse_rdec = RdecParser.parse
serialize_rdec = RdecParser.to_text


def validate_decomposition(graph: Graph, decomposition: RankDecomposition) -> None:
    """
    Comprueba que la descomposición sea un árbol subcúbico con hojas en biyección con V.

    Raises:
        NotATreeError, DegreeExceededError, LeafMismatchError (con el nodo culpable)
    """
    if decomposition.is_empty:
        if graph.n:
            raise LeafMismatchError("La descomposición está vacía pero el grafo tiene vértices")
        return

    tree = nx.Graph()
    tree.add_nodes_from(sorted(decomposition.nodes))
    for a, b in decomposition.tree_edges:
        if a == b:
            raise NotATreeError(f"El nodo '{a}' tiene un lazo", node=a)
        tree.add_edge(a, b)
    if not nx.is_connected(tree):
        start = min(decomposition.nodes)
        reached = nx.node_connected_component(tree, start)
        offender = min(set(decomposition.nodes) - reached)
        raise NotATreeError(f"El nodo '{offender}' no está conectado al árbol", node=offender)
    if tree.number_of_edges() != tree.number_of_nodes() - 1:
        cycle = nx.find_cycle(tree, source=min(decomposition.nodes))
        offender = min(node for edge in cycle for node in edge)
        raise NotATreeError(f"Hay un ciclo que pasa por el nodo '{offender}'", node=offender)

    for node in sorted(decomposition.nodes):
        degree = tree.degree(node)
        if degree > 3:
            raise DegreeExceededError(
                f"El nodo '{node}' tiene grado {degree}; el máximo es 3", node=node
            )
        is_leaf = degree <= 1
        if is_leaf and node not in decomposition.leaf_map:
            raise LeafMismatchError(f"La hoja '{node}' no tiene vértice asignado", node=node)
        if not is_leaf and node in decomposition.leaf_map:
            raise LeafMismatchError(
                f"El nodo interno '{node}' tiene un vértice asignado", node=node
            )

    assigned: dict[int, str] = {}
    for node, vertex in sorted(decomposition.leaf_map.items()):
        if not 0 <= vertex < graph.n:
            raise LeafMismatchError(
                f"La hoja '{node}' referencia el vértice {vertex}, fuera de rango", node=node
            )
        if vertex in assigned:
            raise LeafMismatchError(
                f"La hoja '{node}' repite el vértice {vertex} de '{assigned[vertex]}'", node=node
            )
        assigned[vertex] = node
    missing = sorted(set(range(graph.n)) - set(assigned))
    if missing:
        raise LeafMismatchError(f"Ninguna hoja representa al vértice {missing[0]}")


def _edge_cut_masks(decomposition: RankDecomposition) -> list[int]:
    """Para cada arista del árbol, la máscara de vértices de uno de sus lados."""
    if not decomposition.tree_edges:
        return []
    adjacency = decomposition.adjacency()
    start = min(decomposition.nodes)
    parent: dict[str, Optional[str]] = {start: None}
    order = [start]
    for node in order:
        for other in adjacency[node]:
            if other not in parent:
                parent[other] = node
                order.append(other)
    masks: dict[str, int] = {}
    for node in reversed(order):
        mask = 1 << decomposition.leaf_map[node] if node in decomposition.leaf_map else 0
        for other in adjacency[node]:
            if parent.get(other) == node:
                mask |= masks[other]
        masks[node] = mask
    return [masks[node] for node in order if parent[node] is not None]


def decomposition_width(graph: Graph, decomposition: RankDecomposition) -> int:
    """Máximo de ρ_G(X_e) sobre las aristas e del árbol."""
    validate_decomposition(graph, decomposition)
    return max((cut_rank(graph, mask) for mask in _edge_cut_masks(decomposition)), default=0)


@dataclass(frozen=True)
class RootedNode:
    """Nodo de la descomposición enraizada; `children` son índices en post-orden."""

    name: str
    mask: int
    children: tuple[int, ...] = ()
    vertex: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class RootedDecomposition:
    """Árbol binario en post-orden: cada hijo precede a su padre; la raíz es el último."""

    nodes: tuple[RootedNode, ...]

    @property
    def root(self) -> RootedNode:
        return self.nodes[-1]

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    @property
    def vertex_mask(self) -> int:
        return self.root.mask if self.nodes else 0


def _unique_root_id(nodes: frozenset[str]) -> str:
    candidate = ROOT_NODE_ID
    suffix = 0
    while candidate in nodes:
        suffix += 1
        candidate = f"{ROOT_NODE_ID}_{suffix}"
    return candidate


def root_decomposition(decomposition: RankDecomposition) -> RootedDecomposition:
    """
    Enraíza subdividiendo la primera arista en orden lexicográfico.

    Con un solo vértice la hoja es la raíz. Los nodos internos que quedan
    con un único hijo se eliminan, de modo que todo nodo interno es binario.
    """
    if decomposition.is_empty:
        raise DecompositionError("No se puede enraizar una descomposición vacía")
    if len(decomposition.tree_edges) != len(decomposition.nodes) - 1:
        raise NotATreeError("Las aristas no forman un árbol")

    adjacency = decomposition.adjacency()
    if not decomposition.tree_edges:
        (only,) = decomposition.nodes
        if only not in decomposition.leaf_map:
            raise LeafMismatchError(f"La hoja '{only}' no tiene vértice asignado", node=only)
        vertex = decomposition.leaf_map[only]
        return RootedDecomposition((RootedNode(only, 1 << vertex, (), vertex),))

    root = _unique_root_id(decomposition.nodes)
    a, b = decomposition.tree_edges[0]
    adjacency[a] = [root if x == b else x for x in adjacency[a]]
    adjacency[b] = [root if x == a else x for x in adjacency[b]]
    adjacency[root] = [a, b]

    children: dict[str, list[str]] = {}
    order: list[str] = []
    stack = [(root, None)]
    seen = {root}
    while stack:
        node, parent = stack.pop()
        order.append(node)
        children[node] = [x for x in adjacency[node] if x != parent]
        for child in reversed(children[node]):
            if child in seen:
                raise NotATreeError(f"Hay un ciclo que pasa por el nodo '{child}'", node=child)
            seen.add(child)
            stack.append((child, node))
    if len(seen) != len(decomposition.nodes) + 1:
        raise NotATreeError("El árbol de descomposición no es conexo")

    built: dict[str, int] = {}
    nodes: list[RootedNode] = []

    def resolve(node: str) -> int:
        # los nodos unarios se sustituyen por su único hijo
        while len(children[node]) == 1:
            node = children[node][0]
        return built[node]

    for node in reversed(order):
        kids = children[node]
        if not kids:
            if node not in decomposition.leaf_map:
                raise LeafMismatchError(f"La hoja '{node}' no tiene vértice asignado", node=node)
            vertex = decomposition.leaf_map[node]
            built[node] = len(nodes)
            nodes.append(RootedNode(node, 1 << vertex, (), vertex))
        elif len(kids) == 2:
            left, right = resolve(kids[0]), resolve(kids[1])
            built[node] = len(nodes)
            nodes.append(
                RootedNode(node, nodes[left].mask | nodes[right].mask, (left, right))
            )
        elif len(kids) > 2:
            raise DegreeExceededError(
                f"El nodo '{node}' tiene grado {len(kids) + 1}; el máximo es 3", node=node
            )
    rooted = RootedDecomposition(tuple(nodes))
    logger.debug("Descomposición enraizada en '%s' con %d nodos", root, len(nodes))
    return rooted


def _check_permutation(graph: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(graph.n)):
        raise ValidationError("El orden no es una permutación de los vértices")


def caterpillar_from_order(graph: Graph, order: Sequence[int]) -> RankDecomposition:
    """Oruga cuya secuencia de hojas sigue `order`; hojas l<v>, espina s<i>."""
    _check_permutation(graph, order)
    n = len(order)
    leaf_map = {f"l{v}": v for v in order}
    if n <= 1:
        return RankDecomposition(frozenset(leaf_map), (), leaf_map)
    if n == 2:
        return RankDecomposition.build([(f"l{order[0]}", f"l{order[1]}")], leaf_map)
    edges = [(f"s{i}", f"s{i + 1}") for i in range(2, n - 1)]
    edges.append((f"l{order[0]}", "s2"))
    for i in range(2, n):
        edges.append((f"l{order[i - 1]}", f"s{i}"))
    edges.append((f"l{order[n - 1]}", f"s{n - 1}"))
    return RankDecomposition.build(edges, leaf_map)


def linear_layout_width(graph: Graph, order: Sequence[int]) -> int:
    """max_i ρ({v_1..v_i}) del orden lineal."""
    _check_permutation(graph, order)
    prefix = 0
    width = 0
    for v in order:
        prefix |= 1 << v
        width = max(width, cut_rank(graph, prefix))
    return width


def breadth_first_order(graph: Graph) -> list[int]:
    """Recorrido en anchura desde el menor vértice no visitado, vecinos ascendentes."""
    seen = 0
    order: list[int] = []
    for start in range(graph.n):
        if (seen >> start) & 1:
            continue
        seen |= 1 << start
        queue = [start]
        for v in queue:
            order.append(v)
            fresh = graph.rows[v] & ~seen
            seen |= fresh
            queue.extend(iter_bits(fresh))
    return order


def linear_rankwidth_exact(
    graph: Graph, max_vertices: int = DEFAULT_MAX_EXACT_VERTICES
) -> int:
    """Mínimo sobre todos los órdenes de la anchura lineal (DP sobre prefijos)."""
    n = graph.n
    if n > max_vertices:
        raise ResourceCapError("rank-width lineal exacta, vértices", max_vertices, n)
    best = [0] * (1 << n)
    for subset in range(1, 1 << n):
        rank = cut_rank(graph, subset)
        best[subset] = max(rank, min(best[subset ^ (1 << v)] for v in iter_bits(subset)))
    return best[(1 << n) - 1]


def decomposition_from_binary_tree(tree: BinaryTree, n: int) -> RankDecomposition:
    """Convierte un árbol binario anidado en descomposición sin raíz (se suprime la raíz)."""
    leaf_map: dict[str, int] = {}
    edges: list[tuple[str, str]] = []
    counter = 0

    def visit(subtree: BinaryTree) -> str:
        nonlocal counter
        if isinstance(subtree, int):
            node = f"l{subtree}"
            leaf_map[node] = subtree
            return node
        node = f"t{counter}"
        counter += 1
        for child in subtree:
            edges.append((node, visit(child)))
        return node

    if isinstance(tree, int):
        visit(tree)
        return RankDecomposition(frozenset(leaf_map), (), leaf_map)
    left, right = visit(tree[0]), visit(tree[1])
    edges.append((left, right))
    decomposition = RankDecomposition.build(edges, leaf_map)
    if len(leaf_map) != n:
        raise DecompositionError("El árbol binario no cubre todos los vértices")
    return decomposition


def rankwidth_exact(
    graph: Graph, max_vertices: int = DEFAULT_MAX_EXACT_VERTICES
) -> tuple[int, RankDecomposition]:
    """
    Rank-width exacta por DP sobre particiones en dos partes.

    f({v}) = 0; f(S) = min_{A ⊔ B = S} max(f(A), f(B), ρ(A), ρ(B)).
    """
    n = graph.n
    if n > max_vertices:
        raise ResourceCapError("rank-width exacta, vértices", max_vertices, n)
    if n == 0:
        return 0, RankDecomposition(frozenset(), (), {})

    ranks = [cut_rank(graph, subset) for subset in range(1 << n)]
    best = [0] * (1 << n)
    split = [0] * (1 << n)
    for subset in range(1, 1 << n):
        if popcount(subset) == 1:
            continue
        low = subset & -subset
        rest = subset ^ low
        value = n + 1
        choice = 0
        # A contiene al menor vértice; B = S ∖ A no vacío
        part = rest
        while True:
            a = low | (rest & ~part)
            b = subset ^ a
            if b:
                candidate = max(best[a], best[b], ranks[a], ranks[b])
                if candidate < value:
                    value, choice = candidate, a
            if part == 0:
                break
            part = (part - 1) & rest
        best[subset] = value
        split[subset] = choice

    def unfold(subset: int) -> BinaryTree:
        if popcount(subset) == 1:
            return subset.bit_length() - 1
        a = split[subset]
        return (unfold(a), unfold(subset ^ a))

    full = (1 << n) - 1
    return best[full], decomposition_from_binary_tree(unfold(full), n)


def _split_score(graph: Graph, a: int, b: int) -> tuple[int, int]:
    rank_a, rank_b = cut_rank(graph, a), cut_rank(graph, b)
    return max(rank_a, rank_b), rank_a + rank_b


def _bisect(graph: Graph, subset: int) -> tuple[int, int]:
    """Partición equilibrada de subset minimizando el rango de corte global."""
    members = list(iter_bits(subset))
    target = len(members) // 2
    a = 1 << members[0]
    while popcount(a) < target:
        candidates = [v for v in members if not (a >> v) & 1]
        _, chosen = min((cut_rank(graph, a | (1 << v)), v) for v in candidates)
        a |= 1 << chosen
    b = subset ^ a

    score = _split_score(graph, a, b)
    improved = True
    while improved:
        improved = False
        best_swap = None
        for u in iter_bits(a):
            for v in iter_bits(b):
                swapped_a = a ^ (1 << u) ^ (1 << v)
                candidate = _split_score(graph, swapped_a, subset ^ swapped_a)
                if candidate < score:
                    score, best_swap = candidate, swapped_a
        if best_swap is not None:
            a, b = best_swap, subset ^ best_swap
            improved = True
    return a, b


def decompose_greedy_bisection(graph: Graph) -> RankDecomposition:
    """Bipartición recursiva equilibrada con mejora local por intercambios."""
    if graph.n == 0:
        return RankDecomposition(frozenset(), (), {})

    def build(subset: int) -> BinaryTree:
        if popcount(subset) == 1:
            return subset.bit_length() - 1
        a, b = _bisect(graph, subset)
        return (build(a), build(b))

    decomposition = decomposition_from_binary_tree(build(graph.full_mask), graph.n)
    logger.debug("Bisección voraz sobre %d vértices", graph.n)
    return decomposition
