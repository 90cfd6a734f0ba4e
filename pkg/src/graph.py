"""
Grafos simples como filas de bits y álgebra lineal sobre GF(2).

Cada vértice v tiene una fila entera cuyo bit w vale 1 si {v, w} es arista.
El rango de corte ρ_G(X) es el rango sobre GF(2) de A[X, V∖X].

Formato `.g`:
vertices 4
edge 0 1
edge 1 2      # comentarios con '#'
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import networkx as nx

from .errors import FormatParseError, ValidationError


def iter_bits(mask: int) -> Iterator[int]:
    """Índices de los bits activos de mask, en orden ascendente."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for vertex in vertices:
        mask |= 1 << vertex
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Grafo finito, no dirigido y simple sobre los vértices 0..n-1."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.n:
            raise ValidationError("El número de filas no coincide con n")
        for v, row in enumerate(self.rows):
            if row >> self.n:
                raise ValidationError(f"La fila {v} referencia vértices inexistentes")
            if (row >> v) & 1:
                raise ValidationError(f"El vértice {v} tiene un lazo")
            for w in iter_bits(row):
                if not (self.rows[w] >> v) & 1:
                    raise ValidationError(f"Adyacencia no simétrica entre {v} y {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValidationError(f"Lazo en el vértice {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"Arista ({u}, {v}) fuera de rango")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Convierte un grafo de networkx con nodos 0..n-1."""
        n = graph.number_of_nodes()
        return cls.from_edges(n, graph.edges())

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(self.n)
            for v in iter_bits(self.rows[u] >> (u + 1) << (u + 1))
        ]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph


@dataclass(frozen=True)
class BitMatrix:
    """Matriz rectangular sobre GF(2); cada fila es un entero de `width` bits."""

    rows: tuple[int, ...]
    width: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if row < 0 or row >> self.width:
                raise ValidationError("Fila más ancha que la matriz")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        """Construye desde listas de 0/1; la columna 0 es el bit más significativo."""
        width = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != width:
                raise ValidationError("La matriz no es rectangular")
            value = 0
            for bit in row:
                value = (value << 1) | (bit & 1)
            packed.append(value)
        return cls(tuple(packed), width)


def gf2_rank(matrix: Union[BitMatrix, Sequence[int]]) -> int:
    """Rango sobre GF(2) por eliminación gaussiana sobre filas de bits."""
    rows = matrix.rows if isinstance(matrix, BitMatrix) else matrix
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            pivot = pivots.get(top)
            if pivot is None:
                pivots[top] = row
                rank += 1
                break
            row ^= pivot
    return rank


def cut_matrix(graph: Graph, subset: int) -> list[int]:
    """Filas de A[X, V∖X], con columnas en las posiciones originales."""
    outside = graph.full_mask & ~subset
    return [graph.rows[v] & outside for v in iter_bits(subset)]


def cut_rank(graph: Graph, subset: Union[int, Iterable[int]]) -> int:
    """ρ_G(X) = rango GF(2) de A[X, V∖X]."""
    mask = subset if isinstance(subset, int) else mask_of(subset)
    if mask & ~graph.full_mask:
        raise ValidationError("El subconjunto contiene vértices inexistentes")
    return gf2_rank(cut_matrix(graph, mask))


class GraphParser:
    """Lectura y escritura del formato `.g`."""

    @classmethod
    def parse(cls, text: str) -> Graph:
        n = None
        edges: list[tuple[int, int]] = []
        for line_number, raw_line in enumerate(text.split("\n"), start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            try:
                values = [int(token) for token in tokens[1:]]
            except ValueError:
                raise FormatParseError("se esperaban enteros", line_number) from None
            if tokens[0] == "vertices" and len(values) == 1:
                if n is not None:
                    raise FormatParseError("directiva 'vertices' duplicada", line_number)
                if values[0] < 0:
                    raise FormatParseError("número de vértices negativo", line_number)
                n = values[0]
            elif tokens[0] == "edge" and len(values) == 2:
                if n is None:
                    raise FormatParseError("'vertices' debe preceder a las aristas", line_number)
                u, v = values
                if not (0 <= u < n and 0 <= v < n) or u == v:
                    raise FormatParseError(f"arista ({u}, {v}) inválida", line_number)
                edges.append((u, v))
            else:
                raise FormatParseError(f"línea no reconocida: '{line}'", line_number)
        if n is None:
            raise FormatParseError("falta la directiva 'vertices'")
        return Graph.from_edges(n, edges)

    @classmethod
    def to_text(cls, graph: Graph) -> str:
        lines = [f"vertices {graph.n}"]
        lines.extend(f"edge {u} {v}" for u, v in graph.edges())
        return "\n".join(lines)
