"""
Oráculos de referencia: enumeración exhaustiva de la SOP y vector de estado denso.
"""

import logging
from typing import Sequence

import numpy as np

from .circuit_parser import Circuit, Gate, GateKind
from .errors import ResourceCapError, ValidationError
from .models import ResidueCounts, root_of_unity
from .sop import SopInstance

logger = logging.getLogger(__name__)

DEFAULT_MAX_BRUTE_VARS = 24
DEFAULT_MAX_QUBITS = 24

HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


def sopcount_brute(instance: SopInstance, max_vars: int = DEFAULT_MAX_BRUTE_VARS) -> ResidueCounts:
    """N_j contando las 2^|V| asignaciones una a una."""
    instance.require_consistent()
    if instance.n_vars > max_vars:
        raise ResourceCapError("fuerza bruta, variables", max_vars, instance.n_vars)
    counts = [0] * instance.r
    for assignment in range(1 << instance.n_vars):
        counts[instance.evaluate_mask(assignment)] += 1
    return ResidueCounts(instance.r, tuple(counts))


class StateVector:
    """Estado denso de n qubits como tensor de forma (2,)*n; el eje q es el qubit q."""

    def __init__(self, n_qubits: int, modulus: int, bits: Sequence[int]):
        self.n_qubits = n_qubits
        self.modulus = modulus
        self.amplitudes = np.zeros((2,) * n_qubits, dtype=np.complex128)
        self.amplitudes[tuple(bits)] = 1.0

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, bits: Sequence[int]) -> complex:
        return complex(self.amplitudes[tuple(bits)])

    def _apply_single_qubit(self, matrix: np.ndarray, qubit: int) -> None:
        state = np.tensordot(matrix, self.amplitudes, axes=([1], [qubit]))
        self.amplitudes = np.moveaxis(state, 0, qubit)

    def apply(self, gate: Gate) -> None:
        if gate.kind is GateKind.H:
            self._apply_single_qubit(HADAMARD, gate.qubit)
        elif gate.kind is GateKind.CZ:
            index = [slice(None)] * self.n_qubits
            a, b = gate.qubits
            index[a] = 1
            index[b] = 1
            self.amplitudes[tuple(index)] *= -1
        else:
            phases = np.diag(
                [root_of_unity(self.modulus, gate.p0), root_of_unity(self.modulus, gate.p1)]
            )
            self._apply_single_qubit(phases, gate.qubit)


def _bits(values: "str | Sequence[int]", n_qubits: int, label: str) -> list[int]:
    bits = [{"0": 0, "1": 1}.get(ch, -1) for ch in values] if isinstance(values, str) else list(values)
    if len(bits) != n_qubits or any(bit not in (0, 1) for bit in bits):
        raise ValidationError(f"La cadena {label} debe tener {n_qubits} bits 0/1")
    return bits


def statevector_amplitude(
    circuit: Circuit,
    in_bits: "str | Sequence[int]",
    out_bits: "str | Sequence[int]",
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> complex:
    """⟨out|C|in⟩ aplicando las puertas en orden sobre el estado |in⟩."""
    if circuit.n_qubits > max_qubits:
        raise ResourceCapError("vector de estado, qubits", max_qubits, circuit.n_qubits)
    y = _bits(in_bits, circuit.n_qubits, "de entrada")
    z = _bits(out_bits, circuit.n_qubits, "de salida")
    state = StateVector(circuit.n_qubits, circuit.modulus, y)
    for gate in circuit.gates:
        state.apply(gate)
    logger.debug("Vector de estado: %d puertas sobre %d qubits", len(circuit.gates), circuit.n_qubits)
    return state.amplitude(z)
