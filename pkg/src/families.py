"""
Generadores de familias: circuitos que realizan un grafo dado, árboles
binarios completos, blow-ups por cliques y la familia separadora con su
descomposición testigo.
"""

import logging
from dataclasses import dataclass

from .circuit_parser import DEFAULT_MODULUS, Circuit, CircuitBuilder
from .errors import ValidationError
from .graph import Graph
from .rank_decomposition import BinaryTree, RankDecomposition, decomposition_from_binary_tree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamilyInstance:
    """Circuito de la familia (h, t), su grafo predicho y la descomposición testigo."""

    circuit: Circuit
    graph: Graph
    witness: RankDecomposition
    params: tuple[int, int]


def circuit_from_graph(graph: Graph, modulus: int = DEFAULT_MODULUS) -> Circuit:
    """H en cada qubit, CZ por arista, H en cada qubit: su grafo de variables es `graph`."""
    if graph.n == 0:
        raise ValidationError("El grafo necesita al menos un vértice para formar un circuito")
    builder = CircuitBuilder(graph.n, modulus)
    for qubit in range(graph.n):
        builder.h(qubit)
    for u, v in graph.edges():
        builder.cz(u, v)
    for qubit in range(graph.n):
        builder.h(qubit)
    return builder.build()


def complete_binary_tree(height: int) -> Graph:
    """B_h numerado en anchura: los hijos de i son 2i+1 y 2i+2."""
    if height < 0:
        raise ValidationError("La altura debe ser no negativa")
    n = 2 ** (height + 1) - 1
    return Graph.from_edges(n, [((child - 1) // 2, child) for child in range(1, n)])


def blowup(graph: Graph, t: int) -> Graph:
    """Sustituye cada vértice v por un clique sobre v·t .. v·t+t-1."""
    if t < 1:
        raise ValidationError("El tamaño del clique debe ser al menos 1")
    edges = []
    for v in range(graph.n):
        clone = range(v * t, v * t + t)
        edges.extend((a, b) for a in clone for b in clone if a < b)
    for u, v in graph.edges():
        edges.extend((a, b) for a in range(u * t, u * t + t) for b in range(v * t, v * t + t))
    return Graph.from_edges(graph.n * t, edges)


def _balanced(vertices: list[int]) -> BinaryTree:
    if len(vertices) == 1:
        return vertices[0]
    middle = len(vertices) // 2
    return (_balanced(vertices[:middle]), _balanced(vertices[middle:]))


def _witness_tree(tree: Graph, t: int, v: int = 0) -> BinaryTree:
    """Hoja v unida al par de subárboles de sus hijos; cada hoja se expande sobre su clique."""
    expanded = _balanced(list(range(v * t, v * t + t)))
    children = [child for child in tree.neighbors(v) if child > v]
    if not children:
        return expanded
    subtrees = [_witness_tree(tree, t, child) for child in children]
    below = subtrees[0] if len(subtrees) == 1 else (subtrees[0], subtrees[1])
    return (expanded, below)


def witness_decomposition(height: int, t: int) -> RankDecomposition:
    """Descomposición de anchura 1 de B_h[K_t]."""
    tree = complete_binary_tree(height)
    return decomposition_from_binary_tree(_witness_tree(tree, t), tree.n * t)


def separating_family(height: int, t: int, modulus: int = DEFAULT_MODULUS) -> FamilyInstance:
    """Circuito que realiza Γ_{h,t} = B_h[K_t] junto con su testigo."""
    if height < 0 or t < 1:
        raise ValidationError("Se requiere h >= 0 y t >= 1")
    graph = blowup(complete_binary_tree(height), t)
    instance = FamilyInstance(
        circuit=circuit_from_graph(graph, modulus),
        graph=graph,
        witness=witness_decomposition(height, t),
        params=(height, t),
    )
    logger.info(
        "Familia (h=%d, t=%d): %d qubits, %d puertas",
        height,
        t,
        instance.circuit.n_qubits,
        len(instance.circuit.gates),
    )
    return instance
