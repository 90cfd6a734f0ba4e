"""
Eliminación por cubetas sobre el grafo primal G_C.

Los factores asignan a cada asignación de su alcance un vector de conteos
por residuo; multiplicar factores es convolucionar esos vectores en Z_r.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import ResourceCapError, ValidationError
from .models import ResidueCounts
from .sop import SopInstance, VarId
from .treewidth import treewidth_minfill_ub

logger = logging.getLogger(__name__)

DEFAULT_MAX_SEPARATOR = 20

Variable = Union[int, str, VarId]


@dataclass(frozen=True)
class Factor:
    """Alcance ordenado y un vector de conteos por asignación (bit i ↔ scope[i])."""

    scope: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]


def _delta(r: int, residue: int) -> tuple[int, ...]:
    vector = [0] * r
    vector[residue % r] = 1
    return tuple(vector)


def _convolve(a: Sequence[int], b: Sequence[int], r: int) -> list[int]:
    result = [0] * r
    for p, count_a in enumerate(a):
        if count_a:
            for q, count_b in enumerate(b):
                if count_b:
                    result[(p + q) % r] += count_a * count_b
    return result


def _initial_factors(instance: SopInstance) -> list[Factor]:
    r = instance.r
    zero = _delta(r, 0)
    factors = [
        Factor((v,), (zero, _delta(r, instance.b[v]))) for v in range(instance.n_vars)
    ]
    for u, v in sorted(instance.edges):
        factors.append(Factor((u, v), (zero, zero, zero, _delta(r, instance.eta))))
    return factors


def _eliminate(factors: list[Factor], v: int, r: int, max_separator: int) -> Factor:
    scope = sorted({w for factor in factors for w in factor.scope})
    separator = [w for w in scope if w != v]
    if len(separator) > max_separator:
        raise ResourceCapError("eliminación por cubetas, separador", max_separator, len(separator))
    position = {w: i for i, w in enumerate(scope)}
    table: list[list[int]] = [[0] * r for _ in range(1 << len(separator))]
    v_bit = position[v]
    for assignment in range(1 << len(scope)):
        vector = list(_delta(r, 0))
        for factor in factors:
            index = 0
            for i, w in enumerate(factor.scope):
                index |= ((assignment >> position[w]) & 1) << i
            vector = _convolve(vector, factor.table[index], r)
        # quitar el bit de v deja el índice sobre el separador
        low = assignment & ((1 << v_bit) - 1)
        high = assignment >> (v_bit + 1)
        target = table[low | (high << v_bit)]
        for residue, count in enumerate(vector):
            target[residue] += count
    return Factor(tuple(separator), tuple(tuple(row) for row in table))


def _resolve_order(instance: SopInstance, order: Sequence[Variable]) -> list[int]:
    resolved = [v if isinstance(v, int) else instance.var_index(v) for v in order]
    if sorted(resolved) != list(range(instance.n_vars)):
        raise ValidationError("El orden de eliminación no es una permutación de las variables")
    return resolved


def sopcount_bucket(
    instance: SopInstance,
    order: Optional[Sequence[Variable]] = None,
    max_separator: int = DEFAULT_MAX_SEPARATOR,
) -> ResidueCounts:
    """
    Conteos por eliminación de variables.

    Args:
        instance: instancia consistente
        order: orden de eliminación (índices o nombres q<w>s<k>); min-fill si se omite
        max_separator: límite de variables en un mensaje

    Raises:
        ResourceCapError si algún separador supera max_separator
    """
    instance.require_consistent()
    r = instance.r
    if order is None:
        _, resolved = treewidth_minfill_ub(instance.graph)
    else:
        resolved = _resolve_order(instance, order)

    factors = _initial_factors(instance)
    for v in resolved:
        bucket = [factor for factor in factors if v in factor.scope]
        factors = [factor for factor in factors if v not in factor.scope]
        factors.append(_eliminate(bucket, v, r, max_separator))

    result = list(_delta(r, 0))
    for factor in factors:
        result = _convolve(result, factor.table[0], r)
    logger.debug("Eliminación por cubetas completada sobre %d variables", instance.n_vars)
    return ResidueCounts(r, tuple(result)).shifted(instance.c)
