"""
SopSim - Punto de entrada de línea de comandos

Subcomandos:
    simulate, extract-sop, decompose, width, gen-family, gen-graph-circuit,
    encode-wmc, tn-stats, bench

Códigos de salida: 0 éxito, 1 uso, 2 parseo, 3 validación, 4 límite de recursos.
Los resultados van a stdout; los diagnósticos y el log a stderr.
"""

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from .circuit_parser import Circuit, CircuitParser
from .errors import ResourceCapError, SopSimError, UsageError
from .families import circuit_from_graph, separating_family
from .graph import GraphParser
from .models import ResidueCounts, amplitude_from_counts, root_of_unity
from .rank_decomposition import (
    RankDecomposition,
    RdecParser,
    decomposition_width,
    root_decomposition,
)
from .settings import DECOMPOSITION_SOURCES, METHODS, SettingsManager, SimulatorSettings
from .simulator import Simulator
from .sop import extract_sop, sop_to_dot
from .sop_dp import sopcount_rank_dp
from .storage import atomic_write_text, read_bytes_limited, read_text_limited
from .tensor_network import line_graph, tensor_network_graph
from .treewidth import tree_decomposition_from_order, treewidth_exact, treewidth_minfill_ub
from .wmc import WmcWriter, encode_wmc, naive_weighted_count

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
BENCH_FIELDS = (
    "h",
    "t",
    "qubits",
    "vars",
    "edges",
    "method",
    "status",
    "width",
    "amplitude_re",
    "amplitude_im",
    "seconds",
)


class _ArgumentParser(argparse.ArgumentParser):
    """argparse que informa los errores de uso con código 1."""

    def error(self, message: str):
        raise UsageError(message)


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format=LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def _read_circuit(path: str) -> Circuit:
    return CircuitParser.parse_bytes(read_bytes_limited(Path(path)))


def _read_decomposition(path: str) -> RankDecomposition:
    return RdecParser.parse(read_text_limited(Path(path)))


def _zeros(circuit: Circuit) -> str:
    return "0" * circuit.n_qubits


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        atomic_write_text(Path(output), text + "\n")
        logger.info("Escrito %s", output)
    else:
        print(text)


def _format_counts(counts: Optional[ResidueCounts]) -> str:
    return str(counts) if counts is not None else "-"


def _cmd_simulate(args, settings: SimulatorSettings) -> int:
    circuit = _read_circuit(args.circuit)
    decomposition = _read_decomposition(args.decomp) if args.decomp else None
    simulator = Simulator(settings)
    result = simulator.simulate(
        circuit,
        args.in_bits,
        args.out_bits,
        method=args.method,
        source=args.decomposition,
        decomposition=decomposition,
    )
    if args.json:
        print(json.dumps(result.to_json_dict(), ensure_ascii=False))
        return 0
    amplitude = result.amplitude
    print(f"método:     {result.method}")
    print(f"estado:     {result.status.value}")
    print(f"r={result.r} c={result.c} m_H={result.hadamards}")
    print(f"conteos:    {_format_counts(result.counts)}")
    if result.width_used is not None:
        print(f"anchura:    {result.width_used} ({result.decomposition})")
    print(f"amplitud:   {amplitude.real:.15g} {amplitude.imag:+.15g}i")
    return 0


def _cmd_extract_sop(args, settings: SimulatorSettings) -> int:
    circuit = _read_circuit(args.circuit)
    instance = extract_sop(circuit, args.in_bits or _zeros(circuit), args.out_bits or _zeros(circuit))
    if args.dot:
        _emit(sop_to_dot(instance), args.output)
        return 0
    payload = {
        "schema": "1",
        "r": instance.r,
        "eta": instance.eta,
        "c": instance.c,
        "hadamards": instance.hadamard_count,
        "status": instance.status.value,
        "vars": [str(var) for var in instance.vars],
        "b": list(instance.b),
        "edges": [list(edge) for edge in sorted(instance.edges)],
    }
    _emit(json.dumps(payload, ensure_ascii=False), args.output)
    return 0


def _cmd_decompose(args, settings: SimulatorSettings) -> int:
    circuit = _read_circuit(args.circuit)
    instance = extract_sop(circuit, _zeros(circuit), _zeros(circuit))
    choice = Simulator(settings).choose_decomposition(instance, args.decomposition)
    text = f"# anchura {choice.width} ({choice.source})\n" + RdecParser.to_text(choice.decomposition)
    _emit(text, args.output)
    if args.output:
        print(f"anchura {choice.width} ({choice.source})")
    return 0


def _cmd_width(args, settings: SimulatorSettings) -> int:
    circuit = _read_circuit(args.circuit)
    instance = extract_sop(circuit, _zeros(circuit), _zeros(circuit))
    width = decomposition_width(instance.graph, _read_decomposition(args.decomp))
    if args.json:
        print(json.dumps({"schema": "1", "vars": instance.n_vars, "width": width}))
    else:
        print(f"anchura {width}")
    return 0


def _cmd_gen_family(args, settings: SimulatorSettings) -> int:
    if args.h < 0 or args.t < 1:
        raise UsageError("--h debe ser no negativo y --t al menos 1")
    family = separating_family(args.h, args.t, args.modulus)
    directory = Path(args.output_dir)
    directory.mkdir(parents=True, exist_ok=True)
    stem = directory / f"family_h{args.h}_t{args.t}"
    circuit_path = stem.with_suffix(".sqc")
    witness_path = stem.with_suffix(".rdec")
    atomic_write_text(circuit_path, CircuitParser.to_text(family.circuit) + "\n")
    atomic_write_text(witness_path, RdecParser.to_text(family.witness) + "\n")
    width = decomposition_width(family.graph, family.witness)
    print(f"{circuit_path} {witness_path} qubits={family.circuit.n_qubits} anchura={width}")
    return 0


def _cmd_gen_graph_circuit(args, settings: SimulatorSettings) -> int:
    graph = GraphParser.parse(read_text_limited(Path(args.graph)))
    _emit(CircuitParser.to_text(circuit_from_graph(graph, args.modulus)), args.output)
    return 0


def _cmd_encode_wmc(args, settings: SimulatorSettings) -> int:
    circuit = _read_circuit(args.circuit)
    instance = extract_sop(circuit, args.in_bits, args.out_bits)
    formula = encode_wmc(instance)
    if args.count:
        total = naive_weighted_count(formula, settings.max_wmc_vars)
        amplitude = root_of_unity(formula.r, formula.constant) * total
        amplitude *= 2.0 ** (-formula.hadamard_count / 2)
        payload = {
            "schema": "1",
            "weighted_count": {"re": total.real, "im": total.imag},
            "amplitude": {"re": amplitude.real, "im": amplitude.imag},
        }
        _emit(json.dumps(payload), args.output)
        return 0
    text = WmcWriter.to_weighted_dimacs(formula) if args.dimacs else WmcWriter.to_qwmc(formula)
    _emit(text, args.output)
    return 0


def _width_stats(graph, settings: SimulatorSettings) -> dict:
    upper, order = treewidth_minfill_ub(graph)
    tree_decomposition_from_order(graph, order).validate(graph)
    stats = {"vertices": graph.n, "edges": graph.edge_count, "treewidth_minfill": upper}
    stats["treewidth_exact"] = None
    if graph.n <= settings.max_exact_treewidth_vertices:
        width, decomposition = treewidth_exact(graph, settings.max_exact_treewidth_vertices)
        decomposition.validate(graph)
        stats["treewidth_exact"] = width
    return stats


def _cmd_tn_stats(args, settings: SimulatorSettings) -> int:
    circuit = _read_circuit(args.circuit)
    network = tensor_network_graph(circuit)
    lines = line_graph(network)
    instance = extract_sop(circuit, _zeros(circuit), _zeros(circuit))
    payload = {
        "schema": "1",
        "tensor_network": _width_stats(network.graph, settings),
        "line_graph": _width_stats(lines.graph, settings),
        "sop_graph": _width_stats(instance.graph, settings),
        "line_graph_convention": "bonds-internos",
    }
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
        return 0
    for key in ("tensor_network", "line_graph", "sop_graph"):
        stats = payload[key]
        exact = stats["treewidth_exact"] if stats["treewidth_exact"] is not None else "-"
        print(
            f"{key:15s} |V|={stats['vertices']:<4d} |E|={stats['edges']:<5d} "
            f"tw={exact} tw_minfill={stats['treewidth_minfill']}"
        )
    print("L(N_C) restringido a bonds internos (índices abiertos omitidos)")
    return 0


def _bench_rows(args, settings: SimulatorSettings) -> list[dict]:
    simulator = Simulator(settings)
    rows = []
    for h in range(1, args.h_max + 1):
        for t in range(1, args.t_max + 1):
            family = separating_family(h, t)
            zeros = _zeros(family.circuit)
            instance = extract_sop(family.circuit, zeros, zeros)
            for method in args.methods:
                row = {
                    "h": h,
                    "t": t,
                    "qubits": family.circuit.n_qubits,
                    "vars": instance.n_vars,
                    "edges": len(instance.edges),
                    "method": method,
                }
                start = time.perf_counter()
                try:
                    if method == "witness":
                        counts = sopcount_rank_dp(instance, root_decomposition(family.witness))
                        amplitude = amplitude_from_counts(counts, instance.hadamard_count).numeric
                        width = decomposition_width(instance.graph, family.witness)
                    else:
                        result = simulator.simulate(family.circuit, zeros, zeros, method=method)
                        amplitude, width = result.amplitude, result.width_used
                    row.update(
                        status="ok",
                        width="" if width is None else width,
                        amplitude_re=f"{amplitude.real:.15f}",
                        amplitude_im=f"{amplitude.imag:.15f}",
                    )
                except ResourceCapError as e:
                    logger.info("Fila omitida (h=%d, t=%d, %s): %s", h, t, method, e)
                    row.update(status="cap", width="", amplitude_re="", amplitude_im="")
                row["seconds"] = f"{time.perf_counter() - start:.6f}"
                rows.append(row)
    return rows


def _cmd_bench(args, settings: SimulatorSettings) -> int:
    unknown = [m for m in args.methods if m not in METHODS and m != "witness"]
    if unknown:
        raise UsageError(f"Métodos desconocidos: {', '.join(unknown)}")
    rows = _bench_rows(args, settings)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit(buffer.getvalue().rstrip("\n"), args.output)
    return 0


def _add_pins(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--in", dest="in_bits", required=required, help="bits de entrada y")
    parser.add_argument("--out", dest="out_bits", required=required, help="bits de salida z")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="sopsim",
        description="Simulación fuerte de circuitos {H, diagonales, CZ} por sumas de potencias",
    )
    parser.add_argument("--verbose", action="store_true", help="log INFO en stderr")
    parser.add_argument("--settings", help="ruta del archivo de configuración JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", help="amplitud y conteos por residuo")
    simulate.add_argument("circuit")
    _add_pins(simulate, required=True)
    simulate.add_argument("--method", choices=METHODS)
    group = simulate.add_mutually_exclusive_group()
    group.add_argument("--decomp", help="archivo .rdec con la descomposición")
    group.add_argument("--decomposition", choices=DECOMPOSITION_SOURCES)
    simulate.add_argument("--json", action="store_true")
    simulate.set_defaults(handler=_cmd_simulate)

    extract = sub.add_parser("extract-sop", help="instancia SOP fijada")
    extract.add_argument("circuit")
    _add_pins(extract, required=False)
    extract.add_argument("--dot", action="store_true", help="salida tipo DOT")
    extract.add_argument("--output")
    extract.set_defaults(handler=_cmd_extract_sop)

    decompose = sub.add_parser("decompose", help="construye una descomposición de rango")
    decompose.add_argument("circuit")
    decompose.add_argument("--decomposition", choices=DECOMPOSITION_SOURCES, default="auto")
    decompose.add_argument("--output")
    decompose.set_defaults(handler=_cmd_decompose)

    width = sub.add_parser("width", help="anchura de un .rdec sobre G_C")
    width.add_argument("circuit")
    width.add_argument("--decomp", required=True)
    width.add_argument("--json", action="store_true")
    width.set_defaults(handler=_cmd_width)

    family = sub.add_parser("gen-family", help="familia separadora (h, t) y su testigo")
    family.add_argument("--h", type=int, required=True)
    family.add_argument("--t", type=int, required=True)
    family.add_argument("--modulus", type=int, default=8)
    family.add_argument("--output-dir", default=".")
    family.set_defaults(handler=_cmd_gen_family)

    graph_circuit = sub.add_parser("gen-graph-circuit", help="circuito cuyo G_C es el grafo dado")
    graph_circuit.add_argument("graph")
    graph_circuit.add_argument("--modulus", type=int, default=8)
    graph_circuit.add_argument("--output")
    graph_circuit.set_defaults(handler=_cmd_gen_graph_circuit)

    wmc = sub.add_parser("encode-wmc", help="codificación WMC (QWMC v1)")
    wmc.add_argument("circuit")
    _add_pins(wmc, required=True)
    wmc.add_argument("--dimacs", action="store_true", help="DIMACS con pesos reales")
    wmc.add_argument("--count", action="store_true", help="cuenta ingenua en lugar de la fórmula")
    wmc.add_argument("--output")
    wmc.set_defaults(handler=_cmd_encode_wmc)

    stats = sub.add_parser("tn-stats", help="tamaños y treewidth de N_C, L(N_C) y G_C")
    stats.add_argument("circuit")
    stats.add_argument("--json", action="store_true")
    stats.set_defaults(handler=_cmd_tn_stats)

    bench = sub.add_parser("bench", help="CSV de anchura y tiempo por método y familia")
    bench.add_argument("--h-max", type=int, default=2)
    bench.add_argument("--t-max", type=int, default=2)
    bench.add_argument(
        "--methods", nargs="+", default=["rank-dp", "fourier", "bucket", "witness"]
    )
    bench.add_argument("--output")
    bench.set_defaults(handler=_cmd_bench)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Ejecuta la CLI y devuelve el código de salida."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"Error de uso: {e}", file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        return int(e.code or 0)

    _configure_logging(args.verbose)
    try:
        manager = SettingsManager(Path(args.settings) if args.settings else None)
        return args.handler(args, manager.settings)
    except SopSimError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except (OSError, ValueError) as e:
        # lectura rechazada: archivo ausente, enlace o demasiado grande
        print(f"Error de E/S: {e}", file=sys.stderr)
        return 2


def main() -> int:
    """Punto de entrada principal."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
