import random
from pathlib import Path

import pytest

from src.circuit_parser import CircuitParser, hadamard_depths
from src.corpus import random_bits, random_circuit
from src.sop import extract_sop
from src.storage import read_text_limited


CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture
def example_circuit():
    return CircuitParser.parse(read_text_limited(CORPUS_DIR / "example.sqc"))


@pytest.fixture
def example_instance(example_circuit):
    return extract_sop(example_circuit, "000", "000")


def _consistent_pins(rng, circuit):
    y = random_bits(rng, circuit.n_qubits)
    z = list(random_bits(rng, circuit.n_qubits))
    for wire, depth in enumerate(hadamard_depths(circuit)):
        if depth == 0:
            z[wire] = y[wire]
    return y, "".join(z)


@pytest.fixture
def random_cases():
    """Genera (circuito, y, z, instancia) consistentes y reproducibles."""

    def generate(seed, count, max_qubits=4, max_gates=12, modulus=8):
        rng = random.Random(seed)
        cases = []
        for _ in range(count):
            circuit = random_circuit(
                rng, rng.randint(1, max_qubits), rng.randint(0, max_gates), modulus
            )
            y, z = _consistent_pins(rng, circuit)
            cases.append((circuit, y, z, extract_sop(circuit, y, z)))
        return cases

    return generate


@pytest.fixture
def random_graph():
    """Grafo aleatorio G(n, p) como lista de aristas."""

    def generate(rng, n, p=0.4):
        return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]

    return generate
