"""
Programación dinámica sobre descomposiciones de rango para contar residuos.

Cada nodo u de la descomposición enraizada guarda D_u[σ, s]: cuántas
asignaciones z sobre X_u presentan la firma de frontera σ = σ_u(z) (paridad
de vecinos de z fuera de X_u) y la fase interna φ_u(z) = s. La constante c
se suma una sola vez en la raíz.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DecompositionError, FourierPrecisionError
from .graph import popcount
from .models import ResidueCounts, root_of_unity
from .rank_decomposition import RootedDecomposition, RootedNode
from .sop import SopInstance

logger = logging.getLogger(__name__)

DEFAULT_FOURIER_TOLERANCE = 1e-6


@dataclass
class DpTable:
    """Tabla D_u: vector de conteos por residuo para cada firma, más un testigo por firma."""

    node: RootedNode
    vectors: dict[int, list[int]]
    witnesses: dict[int, int]

    @property
    def signature_count(self) -> int:
        return len(self.vectors)

    def entries(self) -> dict[tuple[int, int], int]:
        """Vista dispersa {(firma, residuo): conteo} sin ceros."""
        return {
            (signature, residue): count
            for signature, vector in self.vectors.items()
            for residue, count in enumerate(vector)
            if count
        }

    def total(self) -> int:
        return sum(sum(vector) for vector in self.vectors.values())


TableObserver = Callable[[DpTable], None]


def cross_parity(alpha: int, xr_mask: int, witness_b: int) -> int:
    """χ = ⟨α|_{X_R}, testigo(β)⟩ sobre GF(2)."""
    return popcount(alpha & xr_mask & witness_b) & 1


def _check_decomposition(instance: SopInstance, rooted: RootedDecomposition) -> None:
    full = (1 << instance.n_vars) - 1
    if rooted.is_empty:
        raise DecompositionError("La descomposición está vacía pero la instancia tiene variables")
    for node in rooted.nodes:
        if node.vertex is not None and node.vertex >= instance.n_vars:
            raise DecompositionError(
                f"La hoja '{node.name}' referencia la variable {node.vertex}, fuera de rango",
                node=node.name,
            )
    if rooted.vertex_mask != full:
        raise DecompositionError(
            "Las hojas de la descomposición no coinciden con las variables de la instancia"
        )


def _leaf_table(instance: SopInstance, node: RootedNode) -> DpTable:
    r = instance.r
    v = node.vertex
    row = instance.graph.rows[v]
    vectors = {0: [0] * r}
    vectors[0][0] += 1
    # las dos asignaciones pueden coincidir en (firma, residuo)
    vectors.setdefault(row, [0] * r)[instance.b[v]] += 1
    witnesses = {0: 0}
    witnesses.setdefault(row, 1 << v)
    return DpTable(node, vectors, witnesses)


def _join_tables(
    instance: SopInstance, node: RootedNode, left: DpTable, right: DpTable
) -> DpTable:
    r = instance.r
    eta = instance.eta
    outside = ~node.mask
    xr_mask = right.node.mask
    vectors: dict[int, list[int]] = {}
    witnesses: dict[int, int] = {}
    for alpha in sorted(left.vectors):
        vector_l = left.vectors[alpha]
        witness_l = left.witnesses[alpha]
        for beta in sorted(right.vectors):
            vector_r = right.vectors[beta]
            gamma = (alpha ^ beta) & outside
            shift = eta * cross_parity(alpha, xr_mask, right.witnesses[beta])
            target = vectors.get(gamma)
            if target is None:
                target = vectors[gamma] = [0] * r
                witnesses[gamma] = witness_l | right.witnesses[beta]
            for p, count_l in enumerate(vector_l):
                if not count_l:
                    continue
                for q, count_r in enumerate(vector_r):
                    if count_r:
                        target[(p + q + shift) % r] += count_l * count_r
    return DpTable(node, vectors, witnesses)


def sopcount_rank_dp(
    instance: SopInstance,
    rooted: RootedDecomposition,
    on_table: Optional[TableObserver] = None,
) -> ResidueCounts:
    """
    Conteos N_0..N_{r-1} por DP sobre una descomposición de rango enraizada.

    Args:
        instance: instancia consistente
        rooted: descomposición cuyas hojas son exactamente las variables
        on_table: callback opcional que recibe cada tabla al completarse

    Raises:
        InconsistentInstanceError, DecompositionError
    """
    instance.require_consistent()
    r = instance.r
    if instance.n_vars == 0:
        return ResidueCounts.single(r, instance.c)
    _check_decomposition(instance, rooted)

    tables: list[DpTable] = []
    for node in rooted.nodes:
        if node.is_leaf:
            table = _leaf_table(instance, node)
        else:
            left, right = node.children
            table = _join_tables(instance, node, tables[left], tables[right])
        tables.append(table)
        if on_table is not None:
            on_table(table)

    root_vector = tables[-1].vectors.get(0, [0] * r)
    counts = tuple(root_vector[(j - instance.c) % r] for j in range(r))
    logger.debug(
        "DP de rango: %d nodos, máximo %d firmas por tabla",
        len(tables),
        max(table.signature_count for table in tables),
    )
    return ResidueCounts(r, counts)


def _phase_table(r: int) -> np.ndarray:
    """phases[k, a] = ω_r^{a·k}."""
    return np.array(
        [[root_of_unity(r, a * k) for a in range(r)] for k in range(r)], dtype=np.complex128
    )


def _fourier_root_vector(instance: SopInstance, rooted: RootedDecomposition) -> np.ndarray:
    """A_root^{(a)}[∅] para todos los modos a a la vez."""
    r = instance.r
    phases = _phase_table(r)
    # kernel (−1)^{a·χ}: solo depende de la paridad de a
    parity_kernel = np.array([(-1) ** a for a in range(r)], dtype=np.complex128)
    rows = instance.graph.rows

    tables: list[dict[int, np.ndarray]] = []
    witness_tables: list[dict[int, int]] = []
    for node in rooted.nodes:
        if node.is_leaf:
            v = node.vertex
            table = {0: np.ones(r, dtype=np.complex128)}
            row = rows[v]
            table[row] = table.get(row, np.zeros(r, dtype=np.complex128)) + phases[instance.b[v]]
            witnesses = {0: 0}
            witnesses.setdefault(row, 1 << v)
        else:
            left_index, right_index = node.children
            left, right = tables[left_index], tables[right_index]
            right_witnesses = witness_tables[right_index]
            left_witnesses = witness_tables[left_index]
            outside = ~node.mask
            xr_mask = rooted.nodes[right_index].mask
            table = {}
            witnesses = {}
            for alpha in sorted(left):
                for beta in sorted(right):
                    gamma = (alpha ^ beta) & outside
                    product = left[alpha] * right[beta]
                    if cross_parity(alpha, xr_mask, right_witnesses[beta]):
                        product = product * parity_kernel
                    if gamma in table:
                        table[gamma] = table[gamma] + product
                    else:
                        table[gamma] = product
                        witnesses[gamma] = left_witnesses[alpha] | right_witnesses[beta]
        tables.append(table)
        witness_tables.append(witnesses)
    return tables[-1].get(0, np.zeros(r, dtype=np.complex128))


def fourier_amplitude_mode(
    instance: SopInstance, rooted: RootedDecomposition, mode: int
) -> complex:
    """N̂(a) = Σ_x ω_r^{a·f(x)}; el modo 1 es R·Z."""
    instance.require_consistent()
    r = instance.r
    mode %= r
    if instance.n_vars == 0:
        return root_of_unity(r, mode * instance.c)
    _check_decomposition(instance, rooted)
    root_vector = _fourier_root_vector(instance, rooted)
    return complex(root_of_unity(r, mode * instance.c) * root_vector[mode])


def sopcount_fourier(
    instance: SopInstance,
    rooted: RootedDecomposition,
    tolerance: float = DEFAULT_FOURIER_TOLERANCE,
) -> ResidueCounts:
    """
    Conteos por la variante de Fourier: una DP en C por modo y transformada inversa.

    Raises:
        FourierPrecisionError si algún N_j se aleja más de `tolerance` de un entero
    """
    instance.require_consistent()
    r = instance.r
    if instance.n_vars == 0:
        return ResidueCounts.single(r, instance.c)
    _check_decomposition(instance, rooted)

    root_vector = _fourier_root_vector(instance, rooted)
    phases = _phase_table(r)
    counts = []
    for j in range(r):
        # N_j = (1/r) Σ_a ω^{a(c−j)} A^{(a)}
        value = complex(np.dot(phases[(instance.c - j) % r], root_vector)) / r
        rounded = round(value.real)
        error = abs(value - rounded)
        if error > tolerance:
            raise FourierPrecisionError(
                f"N_{j} = {value:.9g} se aleja {error:.3g} del entero más cercano"
            )
        counts.append(int(rounded))
    logger.debug("DP de Fourier sobre %d modos completada", r)
    return ResidueCounts(r, tuple(counts))
