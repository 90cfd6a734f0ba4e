"""
Extracción de la suma de potencias (SOP) cuadrática de un circuito.

Cada cable a se corta en sus k_a Hadamards y produce segmentos
x_{a,0}..x_{a,k_a}; el primero se fija a y_a y el último a z_a. Tras fijar
la frontera queda

    f(x) = c + Σ_v b_v x_v + η Σ_{uv ∈ E} x_u x_v   (mod r),   η = r/2

y ⟨z|C|y⟩ = 2^{-m_H/2} Σ_x ω_r^{f(x)}.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .circuit_parser import Circuit, GateKind, hadamard_depths
from .errors import InconsistentInstanceError, ValidationError
from .graph import Graph, iter_bits, popcount
from .models import SopStatus

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class VarId:
    """Segmento `segment` del cable `wire`; se muestra como q<wire>s<segment>."""

    wire: int
    segment: int

    def __str__(self) -> str:
        return f"q{self.wire}s{self.segment}"

    @classmethod
    def parse(cls, text: str) -> "VarId":
        try:
            wire, segment = text[1:].split("s", 1)
            if not text.startswith("q"):
                raise ValueError
            return cls(int(wire), int(segment))
        except ValueError:
            raise ValidationError(f"Nombre de variable inválido: '{text}'") from None


@dataclass(frozen=True)
class SopInstance:
    """SOP cuadrática fijada: grafo G_C, coeficientes b, constante c."""

    r: int
    vars: tuple[VarId, ...]
    edges: frozenset[tuple[int, int]]
    b: tuple[int, ...]
    c: int
    hadamard_count: int
    status: SopStatus = SopStatus.CONSISTENT
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.r < 2 or self.r % 2:
            raise ValidationError(f"El módulo {self.r} debe ser par y mayor o igual a 2")
        if len(self.b) != len(self.vars):
            raise ValidationError("b debe tener un coeficiente por variable")
        if any(not 0 <= value < self.r for value in self.b) or not 0 <= self.c < self.r:
            raise ValidationError(f"Coeficientes fuera de [0, {self.r})")
        for u, v in self.edges:
            if not (0 <= u < v < len(self.vars)):
                raise ValidationError(f"Arista ({u}, {v}) inválida")

    @property
    def eta(self) -> int:
        return self.r // 2

    @property
    def n_vars(self) -> int:
        return len(self.vars)

    @property
    def is_consistent(self) -> bool:
        return self.status is SopStatus.CONSISTENT

    @cached_property
    def graph(self) -> Graph:
        """Grafo de variables G_C en el orden canónico."""
        return Graph.from_edges(len(self.vars), self.edges)

    def var_index(self, name: "str | VarId") -> int:
        var = VarId.parse(name) if isinstance(name, str) else name
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValidationError(f"La variable {var} no es libre en esta instancia") from None

    def require_consistent(self) -> None:
        if not self.is_consistent:
            raise InconsistentInstanceError(
                "La instancia es inconsistente: ningún camino es compatible con la frontera"
            )

    def evaluate_mask(self, assignment: int) -> int:
        """f(x) mod r para una asignación codificada como máscara de bits."""
        rows = self.graph.rows
        linear = 0
        crossings = 0
        for v in iter_bits(assignment):
            linear += self.b[v]
            crossings += popcount(rows[v] & assignment)
        # cada arista seleccionada se cuenta dos veces
        return (self.c + linear + self.eta * (crossings // 2)) % self.r


def evaluate_f(instance: SopInstance, assignment: Sequence[int]) -> int:
    """f(x) mod r para x dado como vector de bits en el orden de `vars`."""
    instance.require_consistent()
    if len(assignment) != instance.n_vars:
        raise ValidationError(
            f"La asignación tiene {len(assignment)} bits; se esperaban {instance.n_vars}"
        )
    mask = 0
    for index, bit in enumerate(assignment):
        if bit not in (0, 1):
            raise ValidationError(f"Bit inválido en la posición {index}: {bit}")
        mask |= bit << index
    return instance.evaluate_mask(mask)


def _parse_bits(bits: "str | Sequence[int]", n_qubits: int, label: str) -> list[int]:
    values = [int(ch) for ch in bits] if isinstance(bits, str) else list(bits)
    if len(values) != n_qubits:
        raise ValidationError(
            f"La cadena {label} tiene longitud {len(values)}; se esperaban {n_qubits}"
        )
    if any(value not in (0, 1) for value in values):
        raise ValidationError(f"La cadena {label} solo admite 0 y 1")
    return values


def extract_sop(
    circuit: Circuit,
    in_bits: "str | Sequence[int]",
    out_bits: "str | Sequence[int]",
) -> SopInstance:
    """
    Construye la SOP fijada de ⟨out|C|in⟩.

    Args:
        circuit: circuito válido
        in_bits: y, carácter i para el qubit i
        out_bits: z, carácter i para el qubit i

    Returns:
        SopInstance; Inconsistent si algún cable sin Hadamards tiene y_a ≠ z_a
    """
    try:
        y = _parse_bits(in_bits, circuit.n_qubits, "de entrada")
        z = _parse_bits(out_bits, circuit.n_qubits, "de salida")
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError("Las cadenas de bits solo admiten 0 y 1") from exc

    r = circuit.modulus
    eta = r // 2
    depths = hadamard_depths(circuit)
    status = SopStatus.CONSISTENT

    # Valores fijados por segmento (cable, segmento)
    pinned: dict[tuple[int, int], int] = {}
    for wire, depth in enumerate(depths):
        pinned[(wire, 0)] = y[wire]
        if depth == 0:
            if y[wire] != z[wire]:
                status = SopStatus.INCONSISTENT
        else:
            pinned[(wire, depth)] = z[wire]

    free = [
        VarId(wire, segment)
        for wire, depth in enumerate(depths)
        for segment in range(1, depth)
    ]
    index = {(var.wire, var.segment): i for i, var in enumerate(free)}

    c = 0
    b = [0] * len(free)
    parity: dict[tuple[int, int], int] = defaultdict(int)

    def add_unary(segment: tuple[int, int], coefficient: int) -> None:
        nonlocal c
        if segment in pinned:
            c += coefficient * pinned[segment]
        else:
            b[index[segment]] += coefficient

    def add_quadratic(s: tuple[int, int], t: tuple[int, int]) -> None:
        nonlocal c
        if s in pinned and t in pinned:
            c += eta * pinned[s] * pinned[t]
        elif s in pinned:
            if pinned[s]:
                b[index[t]] += eta
        elif t in pinned:
            if pinned[t]:
                b[index[s]] += eta
        else:
            pair = tuple(sorted((index[s], index[t])))
            parity[pair] ^= 1

    current = [0] * circuit.n_qubits
    hadamards = 0
    for gate in circuit.gates:
        if gate.kind is GateKind.H:
            wire = gate.qubit
            add_quadratic((wire, current[wire]), (wire, current[wire] + 1))
            current[wire] += 1
            hadamards += 1
        elif gate.kind is GateKind.CZ:
            a, bq = gate.qubits
            add_quadratic((a, current[a]), (bq, current[bq]))
        else:
            segment = (gate.qubit, current[gate.qubit])
            c += gate.p0
            if gate.p1 != gate.p0:
                add_unary(segment, gate.p1 - gate.p0)

    edges = frozenset(pair for pair, odd in parity.items() if odd)
    instance = SopInstance(
        r=r,
        vars=tuple(free),
        edges=edges,
        b=tuple(value % r for value in b),
        c=c % r,
        hadamard_count=hadamards,
        status=status,
    )
    logger.debug(
        "SOP extraída: %d variables, %d aristas, c=%d, m_H=%d, %s",
        instance.n_vars,
        len(edges),
        instance.c,
        hadamards,
        status.value,
    )
    return instance


def sop_to_dot(instance: SopInstance) -> str:
    """Texto tipo DOT con vértices anotados por b y las aristas de G_C."""
    lines = ["graph sop {"]
    lines.append(
        f'  label="r={instance.r} c={instance.c} m_H={instance.hadamard_count}'
        + (' INCONSISTENT' if not instance.is_consistent else "")
        + '";'
    )
    for var, coefficient in zip(instance.vars, instance.b):
        lines.append(f'  {var} [label="{var}\\nb={coefficient}"];')
    for u, v in sorted(instance.edges):
        lines.append(f"  {instance.vars[u]} -- {instance.vars[v]};")
    lines.append("}")
    return "\n".join(lines)
