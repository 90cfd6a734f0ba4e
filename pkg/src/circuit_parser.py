"""
Parser para formato de circuitos `.sqc`

Formato orientado a líneas, con comentarios `#`:
qubits 3          # directivas antes de las puertas
modulus 8         # opcional, por defecto 8
h 0               # Hadamard
t 1               # T = diag(1, ω_r^{r/8})
s 1 / z 1         # S = diag(1, ω_r^{r/4}), Z = diag(1, ω_r^{r/2})
cz 0 1            # CZ entre dos qubits distintos
cx 0 1            # se expande a h 1; cz 0 1; h 1
diag 2 0 3        # diag(ω_r^{p0}, ω_r^{p1}) con exponentes en [0, r)
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import CircuitParseError, CircuitValidationError

DEFAULT_MODULUS = 8
INTEGER_PATTERN = re.compile(r"-?[0-9]+")


class GateKind(Enum):
    """Tipos de puerta del conjunto {H, diagonales, CZ}."""

    H = "h"
    T = "t"
    S = "s"
    Z = "z"
    CZ = "cz"
    DIAG = "diag"


# Puertas de fase con nombre: p1 = r // divisor
NAMED_PHASE_DIVISORS = {GateKind.T: 8, GateKind.S: 4, GateKind.Z: 2}
DIAGONAL_KINDS = frozenset(
    {GateKind.T, GateKind.S, GateKind.Z, GateKind.DIAG}
)


@dataclass(frozen=True)
class Gate:
    """Una puerta en su posición (1-based) dentro del circuito.

    Las puertas diagonales con nombre (T, S, Z) guardan sus exponentes
    canónicos (0, r/8), (0, r/4), (0, r/2) para que todas las diagonales
    compartan el mismo camino de código.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    position: int
    p0: int = 0
    p1: int = 0

    @property
    def is_diagonal(self) -> bool:
        return self.kind in DIAGONAL_KINDS

    @property
    def qubit(self) -> int:
        return self.qubits[0]

    def to_line(self) -> str:
        if self.kind is GateKind.CZ:
            return f"cz {self.qubits[0]} {self.qubits[1]}"
        if self.kind is GateKind.DIAG:
            return f"diag {self.qubit} {self.p0} {self.p1}"
        return f"{self.kind.value} {self.qubit}"

    def __repr__(self) -> str:
        return f"[{self.position}] {self.to_line()}"


@dataclass(frozen=True)
class Circuit:
    """Circuito C = U_m ⋯ U_1 sobre n qubits con módulo de fase r."""

    n_qubits: int
    modulus: int = DEFAULT_MODULUS
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    @property
    def eta(self) -> int:
        return self.modulus // 2

    def validate(self) -> None:
        """Comprueba los invariantes de puertas y módulo."""
        r = self.modulus
        if self.n_qubits < 1:
            raise CircuitValidationError("El circuito necesita al menos un qubit")
        if r < 2 or r % 2:
            raise CircuitValidationError(f"El módulo {r} debe ser par y mayor o igual a 2")
        for index, gate in enumerate(self.gates, start=1):
            if gate.position != index:
                raise CircuitValidationError(
                    f"La puerta {gate!r} tiene posición {gate.position}, se esperaba {index}"
                )
            expected_arity = 2 if gate.kind is GateKind.CZ else 1
            if len(gate.qubits) != expected_arity:
                raise CircuitValidationError(f"Aridad incorrecta en {gate!r}")
            for qubit in gate.qubits:
                if not 0 <= qubit < self.n_qubits:
                    raise CircuitValidationError(
                        f"Qubit {qubit} fuera de rango en {gate!r}"
                    )
            if gate.kind is GateKind.CZ and gate.qubits[0] == gate.qubits[1]:
                raise CircuitValidationError(f"CZ con extremos iguales en {gate!r}")
            divisor = NAMED_PHASE_DIVISORS.get(gate.kind)
            if divisor is not None:
                if r % divisor:
                    raise CircuitValidationError(
                        f"La puerta {gate.kind.value} requiere que {divisor} divida al módulo {r}"
                    )
                if (gate.p0, gate.p1) != (0, r // divisor):
                    raise CircuitValidationError(f"Exponentes no canónicos en {gate!r}")
            if gate.is_diagonal and not (0 <= gate.p0 < r and 0 <= gate.p1 < r):
                raise CircuitValidationError(f"Exponentes fuera de [0, {r}) en {gate!r}")

    def to_text(self) -> str:
        return CircuitParser.to_text(self)


def hadamard_depths(circuit: Circuit) -> list[int]:
    """Número k_a de Hadamards sobre cada cable a."""
    depths = [0] * circuit.n_qubits
    for gate in circuit.gates:
        if gate.kind is GateKind.H:
            depths[gate.qubit] += 1
    return depths


class CircuitBuilder:
    """Construye circuitos válidos desde código (generadores y pruebas)."""

    def __init__(self, n_qubits: int, modulus: int = DEFAULT_MODULUS):
        self.n_qubits = n_qubits
        self.modulus = modulus
        self._gates: list[Gate] = []

    def _append(self, kind: GateKind, qubits: tuple[int, ...], p0: int = 0, p1: int = 0):
        self._gates.append(Gate(kind, qubits, len(self._gates) + 1, p0, p1))
        return self

    def h(self, qubit: int) -> "CircuitBuilder":
        return self._append(GateKind.H, (qubit,))

    def t(self, qubit: int) -> "CircuitBuilder":
        return self._append(GateKind.T, (qubit,), 0, self.modulus // 8)

    def s(self, qubit: int) -> "CircuitBuilder":
        return self._append(GateKind.S, (qubit,), 0, self.modulus // 4)

    def z(self, qubit: int) -> "CircuitBuilder":
        return self._append(GateKind.Z, (qubit,), 0, self.modulus // 2)

    def cz(self, a: int, b: int) -> "CircuitBuilder":
        return self._append(GateKind.CZ, (a, b))

    def cx(self, control: int, target: int) -> "CircuitBuilder":
        return self.h(target).cz(control, target).h(target)

    def diag(self, qubit: int, p0: int, p1: int) -> "CircuitBuilder":
        return self._append(
            GateKind.DIAG, (qubit,), p0 % self.modulus, p1 % self.modulus
        )

    def build(self) -> Circuit:
        circuit = Circuit(self.n_qubits, self.modulus, tuple(self._gates))
        circuit.validate()
        return circuit


class CircuitParser:
    """Parser para archivos/strings en formato `.sqc`."""

    MAX_CONTENT_CHARS = 4 * 1024 * 1024

    @classmethod
    def parse_bytes(cls, data: bytes) -> Circuit:
        """Decodifica UTF-8 informando la línea del primer byte inválido."""
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            line_number = data[: exc.start].count(b"\n") + 1
            raise CircuitParseError("el contenido no es UTF-8 válido", line_number) from exc
        return cls.parse(text)

    @classmethod
    def parse(cls, text: str) -> Circuit:
        """
        Parsea un circuito `.sqc`.

        Args:
            text: contenido del archivo

        Returns:
            Circuit con las puertas en orden y módulo 8 si no se indica

        Raises:
            CircuitParseError con el número de línea del problema
        """
        if not isinstance(text, str):
            raise CircuitParseError("el contenido del circuito debe ser texto", 1)
        if len(text) > cls.MAX_CONTENT_CHARS:
            raise CircuitParseError("el contenido del circuito es demasiado grande", 1)

        n_qubits: Optional[int] = None
        modulus: Optional[int] = None
        gates: list[Gate] = []
        lines = text.split("\n")

        for line_number, raw_line in enumerate(lines, start=1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            keyword = tokens[0].lower()

            if keyword in ("qubits", "modulus"):
                if gates:
                    raise CircuitParseError(
                        f"la directiva '{keyword}' debe preceder a las puertas", line_number
                    )
                if len(tokens) != 2:
                    raise CircuitParseError(f"'{keyword}' espera un único entero", line_number)
                value = cls._parse_int(tokens[1], line_number)
                if keyword == "qubits":
                    if n_qubits is not None:
                        raise CircuitParseError("directiva 'qubits' duplicada", line_number)
                    if value < 1:
                        raise CircuitParseError("el número de qubits debe ser positivo", line_number)
                    n_qubits = value
                else:
                    if modulus is not None:
                        raise CircuitParseError("directiva 'modulus' duplicada", line_number)
                    if value < 2 or value % 2:
                        raise CircuitParseError(
                            f"el módulo {value} debe ser par y mayor o igual a 2", line_number
                        )
                    modulus = value
                continue

            if n_qubits is None:
                raise CircuitParseError(
                    "falta la directiva 'qubits' antes de las puertas", line_number
                )
            gates.extend(
                cls._parse_gate(
                    keyword,
                    tokens[1:],
                    line_number,
                    n_qubits,
                    modulus or DEFAULT_MODULUS,
                    len(gates) + 1,
                )
            )

        if n_qubits is None:
            raise CircuitParseError("falta la directiva 'qubits'", max(1, len(lines)))

        return Circuit(n_qubits, modulus or DEFAULT_MODULUS, tuple(gates))

    @staticmethod
    def _parse_int(token: str, line_number: int) -> int:
        if not INTEGER_PATTERN.fullmatch(token):
            raise CircuitParseError(f"'{token}' no es un entero", line_number)
        return int(token)

    @classmethod
    def _parse_gate(
        cls,
        keyword: str,
        args: list[str],
        line_number: int,
        n_qubits: int,
        modulus: int,
        position: int,
    ) -> list[Gate]:
        arities = {"h": 1, "t": 1, "s": 1, "z": 1, "cz": 2, "cx": 2, "diag": 3}
        if keyword not in arities:
            raise CircuitParseError(f"puerta desconocida '{keyword}'", line_number)
        if len(args) != arities[keyword]:
            raise CircuitParseError(
                f"'{keyword}' espera {arities[keyword]} argumentos", line_number
            )
        values = [cls._parse_int(token, line_number) for token in args]

        qubit_count = 2 if keyword in ("cz", "cx") else 1
        for qubit in values[:qubit_count]:
            if not 0 <= qubit < n_qubits:
                raise CircuitParseError(f"qubit {qubit} fuera de rango", line_number)

        if keyword in ("cz", "cx"):
            a, b = values
            if a == b:
                raise CircuitParseError(f"'{keyword}' requiere qubits distintos", line_number)
            if keyword == "cz":
                return [Gate(GateKind.CZ, (a, b), position)]
            return [
                Gate(GateKind.H, (b,), position),
                Gate(GateKind.CZ, (a, b), position + 1),
                Gate(GateKind.H, (b,), position + 2),
            ]

        qubit = values[0]
        if keyword == "h":
            return [Gate(GateKind.H, (qubit,), position)]
        if keyword == "diag":
            p0, p1 = values[1], values[2]
            for exponent in (p0, p1):
                if not 0 <= exponent < modulus:
                    raise CircuitParseError(
                        f"exponente {exponent} fuera de [0, {modulus})", line_number
                    )
            return [Gate(GateKind.DIAG, (qubit,), position, p0, p1)]

        kind = GateKind(keyword)
        divisor = NAMED_PHASE_DIVISORS[kind]
        if modulus % divisor:
            raise CircuitParseError(
                f"'{keyword}' requiere que {divisor} divida al módulo {modulus}", line_number
            )
        return [Gate(kind, (qubit,), position, 0, modulus // divisor)]

    @classmethod
    def to_text(cls, circuit: Circuit) -> str:
        """Serializa un circuito; parse(to_text(c)) == c."""
        lines = [f"qubits {circuit.n_qubits}", f"modulus {circuit.modulus}"]
        lines.extend(gate.to_line() for gate in circuit.gates)
        return "\n".join(lines)


parse_circuit = CircuitParser.parse
serialize_circuit = CircuitParser.to_text
