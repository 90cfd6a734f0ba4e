"""
Orquestación de la simulación: extrae la SOP, elige la descomposición,
ejecuta el método pedido y arma el resultado.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .bucket import sopcount_bucket
from .circuit_parser import Circuit
from .errors import UsageError
from .models import ResidueCounts, SopStatus, amplitude_from_counts
from .oracles import sopcount_brute, statevector_amplitude
from .rank_decomposition import (
    RankDecomposition,
    breadth_first_order,
    caterpillar_from_order,
    decompose_greedy_bisection,
    decomposition_width,
    rankwidth_exact,
    root_decomposition,
)
from .settings import DECOMPOSITION_SOURCES, METHODS, SimulatorSettings
from .sop import SopInstance, extract_sop
from .sop_dp import sopcount_fourier, sopcount_rank_dp
from .treewidth import elimination_width, treewidth_minfill_ub

logger = logging.getLogger(__name__)

RESULT_SCHEMA = "1"
DECOMPOSITION_METHODS = ("rank-dp", "fourier")


@dataclass(frozen=True)
class DecompositionChoice:
    """Descomposición usada, su anchura y de dónde salió (p. ej. "auto:greedy")."""

    decomposition: RankDecomposition
    width: int
    source: str


@dataclass(frozen=True)
class SimulationResult:
    r: int
    c: int
    hadamards: int
    counts: Optional[ResidueCounts]
    amplitude: complex
    status: SopStatus
    method: str
    width_used: Optional[int] = None
    decomposition: Optional[str] = None

    def to_json_dict(self) -> dict:
        """Esquema estable "1" de la salida JSON."""
        return {
            "schema": RESULT_SCHEMA,
            "r": self.r,
            "c": self.c,
            "hadamards": self.hadamards,
            "counts": list(self.counts.counts) if self.counts is not None else None,
            "amplitude": {
                "re": _clean_zero(self.amplitude.real),
                "im": _clean_zero(self.amplitude.imag),
            },
            "status": self.status.value,
            "method": self.method,
            "width_used": self.width_used,
            "decomposition": self.decomposition,
        }


def _clean_zero(value: float) -> float:
    return 0.0 if value == 0 else value


class Simulator:
    """
    Punto único para simular amplitudes con cualquiera de los métodos.

    Los límites de recursos salen de SimulatorSettings.
    """

    def __init__(self, settings: Optional[SimulatorSettings] = None):
        self.settings = settings or SimulatorSettings()

    def validate_request(
        self,
        method: str,
        source: Optional[str] = None,
        decomposition: Optional[RankDecomposition] = None,
    ) -> None:
        """Rechaza combinaciones método/descomposición incompatibles antes de trabajar."""
        if method not in METHODS:
            raise UsageError(f"Método desconocido '{method}'; opciones: {', '.join(METHODS)}")
        if source is not None and source not in DECOMPOSITION_SOURCES:
            raise UsageError(
                f"Origen de descomposición desconocido '{source}'; "
                f"opciones: {', '.join(DECOMPOSITION_SOURCES)}"
            )
        if decomposition is not None and source is not None:
            raise UsageError("Indique un archivo de descomposición o un origen, no ambos")
        if (decomposition is not None or source is not None) and method not in DECOMPOSITION_METHODS:
            raise UsageError(f"El método '{method}' no usa descomposición de rango")

    def choose_decomposition(
        self,
        instance: SopInstance,
        source: str = "auto",
        decomposition: Optional[RankDecomposition] = None,
    ) -> DecompositionChoice:
        """
        Devuelve la descomposición a usar.

        auto: bisección voraz frente a oruga sobre un orden en anchura; gana la
        de menor anchura y en empate la voraz.
        """
        graph = instance.graph
        if decomposition is not None:
            return DecompositionChoice(
                decomposition, decomposition_width(graph, decomposition), "file"
            )
        if source == "exact":
            width, exact = rankwidth_exact(graph, self.settings.max_exact_rankwidth_vertices)
            return DecompositionChoice(exact, width, "exact")

        candidates: list[DecompositionChoice] = []
        if source in ("auto", "greedy"):
            greedy = decompose_greedy_bisection(graph)
            candidates.append(
                DecompositionChoice(greedy, decomposition_width(graph, greedy), "greedy")
            )
        if source in ("auto", "caterpillar"):
            caterpillar = caterpillar_from_order(graph, breadth_first_order(graph))
            candidates.append(
                DecompositionChoice(
                    caterpillar, decomposition_width(graph, caterpillar), "caterpillar"
                )
            )
        best = min(candidates, key=lambda choice: choice.width)
        if source == "auto":
            if best.source != "greedy":
                logger.warning(
                    "La bisección voraz dio anchura %d; se usa la oruga de anchura %d",
                    candidates[0].width,
                    best.width,
                )
            best = DecompositionChoice(best.decomposition, best.width, f"auto:{best.source}")
        logger.info("Descomposición %s de anchura %d", best.source, best.width)
        return best

    def count(
        self,
        instance: SopInstance,
        method: str,
        choice: Optional[DecompositionChoice] = None,
        order: Optional[Sequence[int]] = None,
    ) -> ResidueCounts:
        """Conteos por residuo con un método de conteo (no statevector)."""
        settings = self.settings
        if method == "brute":
            return sopcount_brute(instance, settings.max_brute_vars)
        if method == "bucket":
            return sopcount_bucket(instance, order, settings.max_bucket_separator)
        if method in DECOMPOSITION_METHODS:
            if instance.n_vars == 0:
                return ResidueCounts.single(instance.r, instance.c)
            choice = choice or self.choose_decomposition(instance)
            rooted = root_decomposition(choice.decomposition)
            if method == "fourier":
                return sopcount_fourier(instance, rooted, settings.fourier_tolerance)
            return sopcount_rank_dp(instance, rooted)
        raise UsageError(f"El método '{method}' no produce conteos por residuo")

    def simulate(
        self,
        circuit: Circuit,
        in_bits: "str | Sequence[int]",
        out_bits: "str | Sequence[int]",
        method: Optional[str] = None,
        source: Optional[str] = None,
        decomposition: Optional[RankDecomposition] = None,
    ) -> SimulationResult:
        """Amplitud ⟨out|C|in⟩ y, salvo con statevector, los conteos N_j."""
        method = method or self.settings.default_method
        self.validate_request(method, source, decomposition)
        instance = extract_sop(circuit, in_bits, out_bits)
        logger.info(
            "SOP: %d variables, %d aristas, método %s",
            instance.n_vars,
            len(instance.edges),
            method,
        )

        def result(counts, amplitude, width=None, label=None) -> SimulationResult:
            return SimulationResult(
                r=instance.r,
                c=instance.c,
                hadamards=instance.hadamard_count,
                counts=counts,
                amplitude=amplitude,
                status=instance.status,
                method=method,
                width_used=width,
                decomposition=label,
            )

        if method == "statevector":
            amplitude = statevector_amplitude(
                circuit, in_bits, out_bits, self.settings.max_statevector_qubits
            )
            return result(None, amplitude)
        if not instance.is_consistent:
            return result(None, 0j)

        choice = None
        width = None
        label = None
        order = None
        if method in DECOMPOSITION_METHODS and instance.n_vars:
            choice = self.choose_decomposition(
                instance,
                source or self.settings.default_decomposition,
                decomposition,
            )
            width, label = choice.width, choice.source
        elif method == "bucket":
            _, order = treewidth_minfill_ub(instance.graph)
            width, label = elimination_width(instance.graph, order), "minfill"

        counts = self.count(instance, method, choice, order)
        amplitude = amplitude_from_counts(counts, instance.hadamard_count, instance.status)
        return result(counts, amplitude.numeric, width, label)
