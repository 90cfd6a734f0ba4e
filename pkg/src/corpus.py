"""
Corpus de casos dorados y generador de circuitos aleatorios de regresión.

Estructura del directorio:
    example.sqc, example_path.rdec ejemplo de referencia (mantenido a mano)
    identity_*.sqc               circuitos identidad (mantenidos a mano)
    family_h<h>_t<t>.sqc/.rdec   familias separadoras y sus testigos (generados)
    regression_*.sqc             circuitos de regresión (mantenidos a mano)
    regression_random_<k>.sqc    circuitos aleatorios sembrados (se crean si faltan, luego congelados)
    golden.json                  conteos y amplitudes sellados por los oráculos
"""

import json
import logging
import random
import re
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from .circuit_parser import DEFAULT_MODULUS, Circuit, CircuitBuilder, CircuitParser
from .errors import FormatParseError, ValidationError
from .families import separating_family
from .models import amplitude_from_counts
from .oracles import sopcount_brute, statevector_amplitude
from .rank_decomposition import RdecParser, decomposition_width
from .settings import SimulatorSettings
from .sop import extract_sop
from .storage import atomic_write_text, read_text_limited

logger = logging.getLogger(__name__)

GOLDEN_FILE = "golden.json"
GOLDEN_SCHEMA = "1"
AMPLITUDE_TOLERANCE = 1e-9
FAMILY_PARAMS = ((1, 1), (2, 2))
RANDOM_CASES = 2
RANDOM_SEED = 20240
BOUNDARY_PATTERN = re.compile(r"^# frontera in=([01]+) out=([01]+)$", re.MULTILINE)


@dataclass(frozen=True)
class GoldenCase:
    """Caso dorado: circuito, fijación de frontera y valores esperados."""

    name: str
    circuit: str
    in_bits: str
    out_bits: str
    counts: Optional[list[int]]
    amplitude: dict[str, str]
    provenance: str
    decomposition: Optional[str] = None
    width: Optional[int] = None

    @property
    def amplitude_value(self) -> complex:
        return complex(float(self.amplitude["re"]), float(self.amplitude["im"]))


@dataclass(frozen=True)
class _CaseEntry:
    name: str
    circuit: str
    in_bits: str
    out_bits: str
    provenance: str
    decomposition: Optional[str] = None


def random_circuit(
    rng: random.Random,
    n_qubits: int,
    n_gates: int,
    modulus: int = DEFAULT_MODULUS,
) -> Circuit:
    """Circuito aleatorio sobre {H, T, CZ, Diag}; T solo si 8 divide al módulo."""
    builder = CircuitBuilder(n_qubits, modulus)
    kinds = ["h", "diag"]
    if modulus % 8 == 0:
        kinds.append("t")
    if n_qubits >= 2:
        kinds.append("cz")
    for _ in range(n_gates):
        kind = rng.choice(kinds)
        if kind == "cz":
            a, b = rng.sample(range(n_qubits), 2)
            builder.cz(a, b)
        elif kind == "diag":
            builder.diag(rng.randrange(n_qubits), rng.randrange(modulus), rng.randrange(modulus))
        else:
            getattr(builder, kind)(rng.randrange(n_qubits))
    return builder.build()


def random_bits(rng: random.Random, n: int) -> str:
    return "".join(rng.choice("01") for _ in range(n))


def format_amplitude(value: complex) -> dict[str, str]:
    """Parte real e imaginaria con 15 decimales; -0 se normaliza a 0."""

    def fmt(x: float) -> str:
        text = f"{x:.15f}"
        return text[1:] if text.startswith("-") and float(text) == 0 else text

    return {"re": fmt(value.real), "im": fmt(value.imag)}


def _static_cases() -> list[_CaseEntry]:
    return [
        _CaseEntry("example_000_000", "example.sqc", "000", "000", "reference-example", "example_path.rdec"),
        _CaseEntry("example_000_001", "example.sqc", "000", "001", "reference-example", "example_path.rdec"),
        _CaseEntry("identity_hh_0", "identity_hh.sqc", "0", "0", "identity"),
        _CaseEntry("identity_hh_1", "identity_hh.sqc", "1", "1", "identity"),
        _CaseEntry("identity_empty_10", "identity_empty.sqc", "10", "10", "identity"),
        _CaseEntry("identity_czcz_11", "identity_czcz.sqc", "11", "11", "identity"),
        _CaseEntry("regression_t_cz_00_11", "regression_t_cz.sqc", "00", "11", "regression"),
        _CaseEntry("regression_t_cz_00_01", "regression_t_cz.sqc", "00", "01", "regression"),
    ]


def _write_family_files(directory: Path) -> list[_CaseEntry]:
    entries = []
    for h, t in FAMILY_PARAMS:
        family = separating_family(h, t)
        stem = f"family_h{h}_t{t}"
        atomic_write_text(directory / f"{stem}.sqc", CircuitParser.to_text(family.circuit) + "\n")
        atomic_write_text(directory / f"{stem}.rdec", RdecParser.to_text(family.witness) + "\n")
        zeros = "0" * family.circuit.n_qubits
        entries.append(_CaseEntry(stem, f"{stem}.sqc", zeros, zeros, "family", f"{stem}.rdec"))
    return entries


def seeded_regression_case(k: int) -> tuple[Circuit, str, str]:
    """Circuito aleatorio k del corpus con su frontera (y, z), reproducible por semilla."""
    rng = random.Random(RANDOM_SEED + k)
    circuit = random_circuit(rng, rng.randint(2, 4), rng.randint(6, 12))
    return circuit, random_bits(rng, circuit.n_qubits), random_bits(rng, circuit.n_qubits)


def _random_regression_files(directory: Path) -> list[_CaseEntry]:
    entries = []
    for k in range(RANDOM_CASES):
        stem = f"regression_random_{k}"
        path = directory / f"{stem}.sqc"
        if not path.exists():
            circuit, y, z = seeded_regression_case(k)
            header = f"# frontera in={y} out={z}\n"
            atomic_write_text(path, header + CircuitParser.to_text(circuit) + "\n")
            logger.info("Circuito aleatorio de regresión creado: %s", path.name)
        match = BOUNDARY_PATTERN.search(read_text_limited(path))
        if match is None:
            raise FormatParseError(
                f"{path.name} no declara su frontera '# frontera in=... out=...'"
            )
        entries.append(_CaseEntry(stem, path.name, match[1], match[2], "random"))
    return entries


def _stamp(directory: Path, entry: _CaseEntry, settings: SimulatorSettings) -> GoldenCase:
    circuit = CircuitParser.parse(read_text_limited(directory / entry.circuit))
    instance = extract_sop(circuit, entry.in_bits, entry.out_bits)
    reference = statevector_amplitude(
        circuit, entry.in_bits, entry.out_bits, settings.max_statevector_qubits
    )
    counts = None
    amplitude = reference
    if instance.is_consistent:
        residue_counts = sopcount_brute(instance, settings.max_brute_vars)
        amplitude = amplitude_from_counts(residue_counts, instance.hadamard_count).numeric
        if abs(amplitude - reference) > AMPLITUDE_TOLERANCE:
            raise ValidationError(
                f"Los oráculos discrepan en el caso {entry.name}: {amplitude} frente a {reference}"
            )
        counts = list(residue_counts.counts)
    elif abs(reference) > AMPLITUDE_TOLERANCE:
        raise ValidationError(f"El caso {entry.name} es inconsistente pero su amplitud no es 0")

    width = None
    if entry.decomposition is not None:
        decomposition = RdecParser.parse(read_text_limited(directory / entry.decomposition))
        width = decomposition_width(instance.graph, decomposition)
    return GoldenCase(
        name=entry.name,
        circuit=entry.circuit,
        in_bits=entry.in_bits,
        out_bits=entry.out_bits,
        counts=counts,
        amplitude=format_amplitude(amplitude),
        provenance=entry.provenance,
        decomposition=entry.decomposition,
        width=width,
    )


def regenerate_corpus(
    directory: Path, settings: Optional[SimulatorSettings] = None
) -> list[GoldenCase]:
    """
    Reescribe los archivos generados y golden.json a partir de los oráculos.

    Los archivos mantenidos a mano (example, identidades, regresiones) se leen pero no se tocan.
    Los circuitos aleatorios solo se escriben si faltan; los existentes se vuelven a sellar.
    Ejecutarla dos veces deja exactamente los mismos bytes.
    """
    settings = settings or SimulatorSettings()
    directory = Path(directory)
    entries = _static_cases() + _write_family_files(directory) + _random_regression_files(directory)
    cases = [_stamp(directory, entry, settings) for entry in entries]
    payload = {"schema": GOLDEN_SCHEMA, "cases": [asdict(case) for case in cases]}
    atomic_write_text(
        directory / GOLDEN_FILE, json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    )
    logger.info("Corpus regenerado: %d casos en %s", len(cases), directory)
    return cases


def load_golden(directory: Path) -> list[GoldenCase]:
    """Lee golden.json y devuelve sus casos."""
    path = Path(directory) / GOLDEN_FILE
    try:
        data = json.loads(read_text_limited(path))
    except json.JSONDecodeError as exc:
        raise FormatParseError(f"golden.json no es JSON válido: {exc.msg}", exc.lineno) from exc
    if not isinstance(data, dict) or data.get("schema") != GOLDEN_SCHEMA:
        raise FormatParseError("golden.json tiene un esquema desconocido")
    try:
        return [GoldenCase(**case) for case in data["cases"]]
    except (KeyError, TypeError) as exc:
        raise FormatParseError(f"caso dorado mal formado: {exc}") from exc
