"""
Herramientas de treewidth: DP exacta sobre subconjuntos, cota superior
min-fill y descomposiciones en árbol a partir de órdenes de eliminación.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .errors import ResourceCapError, ValidationError
from .graph import Graph, iter_bits, popcount

logger = logging.getLogger(__name__)

DEFAULT_MAX_EXACT_VERTICES = 14


@dataclass(frozen=True)
class TreeDecomposition:
    """Bolsas de vértices y aristas entre índices de bolsa."""

    bags: tuple[frozenset[int], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max([0, *(len(bag) - 1 for bag in self.bags)])

    def validate(self, graph: Graph) -> None:
        """Comprueba cobertura de vértices y aristas y la conexión de cada vértice."""
        count = len(self.bags)
        if count == 0:
            raise ValidationError("La descomposición en árbol no tiene bolsas")
        if len(self.edges) != count - 1:
            raise ValidationError("Las bolsas no forman un árbol")
        adjacency: dict[int, set[int]] = {i: set() for i in range(count)}
        for a, b in self.edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        if not _connected(set(range(count)), adjacency):
            raise ValidationError("Las bolsas no forman un árbol")

        for v in range(graph.n):
            holders = {i for i, bag in enumerate(self.bags) if v in bag}
            if not holders:
                raise ValidationError(f"El vértice {v} no aparece en ninguna bolsa")
            if not _connected(holders, adjacency):
                raise ValidationError(f"Las bolsas del vértice {v} no son conexas")
        for u, v in graph.edges():
            if not any(u in bag and v in bag for bag in self.bags):
                raise ValidationError(f"La arista ({u}, {v}) no está cubierta")


def _connected(nodes: set[int], adjacency: dict[int, set[int]]) -> bool:
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for other in adjacency[node]:
            if other in nodes and other not in seen:
                seen.add(other)
                stack.append(other)
    return seen == nodes


def _boundary_size(rows: Sequence[int], eliminated: int, v: int) -> int:
    """|Q(S, v)|: vértices fuera de S ∪ {v} alcanzables desde v a través de S."""
    seen = 1 << v
    boundary = 0
    todo = rows[v]
    while todo:
        low = todo & -todo
        todo ^= low
        if seen & low:
            continue
        seen |= low
        if eliminated & low:
            todo |= rows[low.bit_length() - 1] & ~seen
        else:
            boundary |= low
    return popcount(boundary)


def elimination_width(graph: Graph, order: Sequence[int]) -> int:
    """Anchura inducida del orden: máximo de vecinos posteriores en el grafo rellenado."""
    _check_order(graph, order)
    rows = list(graph.rows)
    remaining = graph.full_mask
    width = 0
    for v in order:
        remaining &= ~(1 << v)
        later = rows[v] & remaining
        width = max(width, popcount(later))
        for u in iter_bits(later):
            rows[u] |= later & ~(1 << u)
    return width


def _check_order(graph: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(graph.n)):
        raise ValidationError("El orden de eliminación no es una permutación de los vértices")


def tree_decomposition_from_order(graph: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Bolsa {v} ∪ vecinos posteriores; el padre es la bolsa del primero de ellos en eliminarse."""
    _check_order(graph, order)
    if graph.n == 0:
        return TreeDecomposition((frozenset(),), ())
    position = {v: i for i, v in enumerate(order)}
    rows = list(graph.rows)
    remaining = graph.full_mask
    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []
    roots: list[int] = []
    for index, v in enumerate(order):
        remaining &= ~(1 << v)
        later = rows[v] & remaining
        for u in iter_bits(later):
            rows[u] |= later & ~(1 << u)
        bags.append(frozenset([v, *iter_bits(later)]))
        if later:
            parent = min(iter_bits(later), key=position.__getitem__)
            edges.append((index, position[parent]))
        else:
            roots.append(index)
    # componentes distintas no comparten vértices: se encadenan sus raíces
    edges.extend(zip(roots, roots[1:]))
    return TreeDecomposition(tuple(bags), tuple(edges))


def treewidth_exact(
    graph: Graph, max_vertices: int = DEFAULT_MAX_EXACT_VERTICES
) -> tuple[int, TreeDecomposition]:
    """
    Treewidth exacta por DP sobre subconjuntos.

    TW(S) = min_{v ∈ S} max(TW(S ∖ v), |Q(S ∖ v, v)|), TW(∅) = -1.

    Raises:
        ResourceCapError si el grafo supera max_vertices
    """
    n = graph.n
    if n > max_vertices:
        raise ResourceCapError("treewidth exacta, vértices", max_vertices, n)
    if n == 0:
        return 0, TreeDecomposition((frozenset(),), ())

    rows = graph.rows
    table = [0] * (1 << n)
    table[0] = -1
    for subset in range(1, 1 << n):
        best = n
        for v in iter_bits(subset):
            rest = subset ^ (1 << v)
            value = max(table[rest], _boundary_size(rows, rest, v))
            if value < best:
                best = value
        table[subset] = best

    order: list[int] = []
    subset = graph.full_mask
    while subset:
        for v in iter_bits(subset):
            rest = subset ^ (1 << v)
            if max(table[rest], _boundary_size(rows, rest, v)) == table[subset]:
                order.append(v)
                subset = rest
                break
    order.reverse()

    width = max(table[graph.full_mask], 0)
    decomposition = tree_decomposition_from_order(graph, order)
    logger.debug("Treewidth exacta %d sobre %d vértices", width, n)
    return width, decomposition


def _count_fillin(graph: nx.Graph, nodes) -> int:
    count = 0
    for v1 in nodes:
        for v2 in nodes:
            if v1 != v2 and v2 not in graph[v1]:
                count += 1
    return count // 2


def _eliminate_node(graph: nx.Graph, v) -> None:
    neighbors = list(graph[v])
    for i, v1 in enumerate(neighbors):
        for v2 in neighbors[i + 1:]:
            graph.add_edge(v1, v2)
    graph.remove_node(v)


def treewidth_minfill_ub(graph: Graph) -> tuple[int, list[int]]:
    """Cota superior min-fill: (anchura inducida, orden de eliminación)."""
    working = graph.to_networkx()
    width = 0
    order: list[int] = []
    while len(working) > 0:
        _, u = min((_count_fillin(working, working[u]), u) for u in working)
        width = max(width, len(working[u]))
        _eliminate_node(working, u)
        order.append(u)
    return width, order

