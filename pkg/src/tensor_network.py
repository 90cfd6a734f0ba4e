"""
Grafo de red tensorial N_C y su grafo de líneas L(N_C).

N_C tiene un vértice por puerta y una arista por segmento de cable que une
dos puertas consecutivas del mismo qubit (bond). Los índices abiertos de
entrada/salida no se representan. Los bonds paralelos entre las mismas dos
puertas se colapsan en `graph` pero siguen siendo vértices distintos de L(N_C).

Etiquetas: e_{i,j} con posiciones de puerta 1-based; si hay bonds paralelos
se añade el cable, e_{i,j}@q<w>.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import networkx as nx

from .circuit_parser import Circuit
from .errors import ValidationError
from .graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Bond:
    """Segmento interno del cable `wire` entre las puertas `left` < `right` (0-based)."""

    left: int
    right: int
    wire: int

    def base_label(self) -> str:
        return f"e_{{{self.left + 1},{self.right + 1}}}"


@dataclass(frozen=True)
class TensorNetwork:
    """N_C: grafo simple sobre las puertas más la lista ordenada de bonds."""

    graph: Graph
    bonds: tuple[Bond, ...]

    @cached_property
    def labels(self) -> tuple[str, ...]:
        multiplicity = Counter((bond.left, bond.right) for bond in self.bonds)
        return tuple(
            bond.base_label()
            if multiplicity[(bond.left, bond.right)] == 1
            else f"{bond.base_label()}@q{bond.wire}"
            for bond in self.bonds
        )

    def to_multigraph(self) -> nx.MultiGraph:
        """Multigrafo de networkx con una arista por bond (clave = etiqueta)."""
        multigraph = nx.MultiGraph()
        multigraph.add_nodes_from(range(self.graph.n))
        for bond, label in zip(self.bonds, self.labels):
            multigraph.add_edge(bond.left, bond.right, key=label, wire=bond.wire)
        return multigraph


@dataclass(frozen=True)
class LineGraph:
    """L(N_C): un vértice por bond, adyacentes si comparten una puerta."""

    graph: Graph
    labels: tuple[str, ...]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"No existe el bond '{label}'") from None

    def has_edge(self, a: str, b: str) -> bool:
        return self.graph.has_edge(self.index_of(a), self.index_of(b))


def tensor_network_graph(circuit: Circuit) -> TensorNetwork:
    """Construye N_C a partir de las puertas en orden."""
    last_gate: list[int | None] = [None] * circuit.n_qubits
    bonds: list[Bond] = []
    for index, gate in enumerate(circuit.gates):
        for wire in gate.qubits:
            previous = last_gate[wire]
            if previous is not None:
                bonds.append(Bond(previous, index, wire))
            last_gate[wire] = index
    bonds.sort()
    graph = Graph.from_edges(
        len(circuit.gates), {(bond.left, bond.right) for bond in bonds}
    )
    logger.debug("N_C: %d puertas, %d bonds", graph.n, len(bonds))
    return TensorNetwork(graph, tuple(bonds))


def line_graph(network: TensorNetwork) -> LineGraph:
    """L(N_C) restringido a los bonds internos; los bonds paralelos son adyacentes."""
    position = {
        (bond.left, bond.right, label): index
        for index, (bond, label) in enumerate(zip(network.bonds, network.labels))
    }
    lines = nx.line_graph(network.to_multigraph())
    edges = {(position[a], position[b]) for a, b in lines.edges()}
    return LineGraph(Graph.from_edges(len(network.bonds), edges), network.labels)
