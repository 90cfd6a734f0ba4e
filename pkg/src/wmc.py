"""
Codificación de una SOP como conteo ponderado de modelos (WMC).

Una variable x_v por variable de la SOP y una variable de signo s_uv por
arista, con s_uv ↔ (x_u ∧ x_v) y peso −1 cuando es verdadera. La constante c
y la normalización 2^{-m_H/2} quedan fuera de la fórmula.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceCapError, ValidationError
from .models import root_of_unity
from .sop import SopInstance

logger = logging.getLogger(__name__)

DEFAULT_MAX_VARS = 24
QWMC_VERSION = "v1"
# Asignaciones evaluadas por bloque en el contador ingenuo
_CHUNK_BITS = 16


@dataclass(frozen=True)
class WmcFormula:
    """CNF con pesos complejos por literal (los literales sin peso valen 1)."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    weights: dict[int, complex] = field(default_factory=dict)
    var_roles: dict[int, str] = field(default_factory=dict)
    r: int = 8
    constant: int = 0
    hadamard_count: int = 0

    def weight(self, literal: int) -> complex:
        return self.weights.get(literal, 1)

    @property
    def is_real(self) -> bool:
        return all(value.imag == 0 for value in map(complex, self.weights.values()))


def encode_wmc(instance: SopInstance) -> WmcFormula:
    """Fórmula cuyo conteo ponderado es Σ_x ω^{Σ b_v x_v} (−1)^{Σ_E x_u x_v}."""
    instance.require_consistent()
    n = instance.n_vars
    weights: dict[int, complex] = {}
    roles: dict[int, str] = {}
    for v, var in enumerate(instance.vars):
        literal = v + 1
        roles[literal] = f"x {var}"
        if instance.b[v]:
            weights[literal] = root_of_unity(instance.r, instance.b[v])
    clauses: list[tuple[int, ...]] = []
    for index, (u, v) in enumerate(sorted(instance.edges)):
        sign = n + index + 1
        x_u, x_v = u + 1, v + 1
        roles[sign] = f"s {instance.vars[u]} {instance.vars[v]}"
        weights[sign] = -1
        clauses.extend([(-sign, x_u), (-sign, x_v), (sign, -x_u, -x_v)])
    formula = WmcFormula(
        num_vars=n + len(instance.edges),
        clauses=tuple(clauses),
        weights=weights,
        var_roles=roles,
        r=instance.r,
        constant=instance.c,
        hadamard_count=instance.hadamard_count,
    )
    logger.debug(
        "WMC: %d variables, %d cláusulas", formula.num_vars, len(formula.clauses)
    )
    return formula


def naive_weighted_count(formula: WmcFormula, max_vars: int = DEFAULT_MAX_VARS) -> complex:
    """Σ sobre asignaciones satisfactorias del producto de pesos de sus literales."""
    n = formula.num_vars
    if n > max_vars:
        raise ResourceCapError("contador WMC ingenuo, variables", max_vars, n)
    total = 0j
    chunk = 1 << min(n, _CHUNK_BITS)
    for start in range(0, 1 << n, chunk):
        assignments = np.arange(start, start + chunk, dtype=np.int64)
        bits = {
            var: ((assignments >> (var - 1)) & 1).astype(bool) for var in range(1, n + 1)
        }
        satisfied = np.ones(chunk, dtype=bool)
        for clause in formula.clauses:
            clause_true = np.zeros(chunk, dtype=bool)
            for literal in clause:
                clause_true |= bits[literal] if literal > 0 else ~bits[-literal]
            satisfied &= clause_true
        product = np.ones(chunk, dtype=np.complex128)
        for literal, weight in sorted(formula.weights.items()):
            holds = bits[literal] if literal > 0 else ~bits[-literal]
            product = np.where(holds, product * weight, product)
        total += complex(np.sum(product[satisfied]))
    return total


class WmcWriter:
    """Serialización en formato QWMC v1 y en DIMACS con pesos reales."""

    @classmethod
    def _comments(cls, formula: WmcFormula) -> list[str]:
        lines = [
            f"c qwmc {QWMC_VERSION}",
            f"c constant {formula.constant}",
            f"c hadamards {formula.hadamard_count}",
        ]
        lines.extend(f"c var {var} {role}" for var, role in sorted(formula.var_roles.items()))
        return lines

    @classmethod
    def to_qwmc(cls, formula: WmcFormula) -> str:
        lines = cls._comments(formula)
        lines.append(f"p qwmc {formula.num_vars} {len(formula.clauses)} {formula.r}")
        for literal, weight in sorted(formula.weights.items()):
            value = complex(weight)
            lines.append(f"w {literal} {value.real:.17g} {value.imag:.17g}")
        lines.extend(" ".join(map(str, clause)) + " 0" for clause in formula.clauses)
        return "\n".join(lines)

    @classmethod
    def to_weighted_dimacs(cls, formula: WmcFormula) -> str:
        """DIMACS `p cnf` con líneas `c p weight`; solo si todos los pesos son reales."""
        if not formula.is_real:
            raise ValidationError(
                "La exportación DIMACS requiere pesos reales (b_v en {0, r/2})"
            )
        lines = cls._comments(formula)
        lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
        for literal, weight in sorted(formula.weights.items()):
            lines.append(f"c p weight {literal} {complex(weight).real:.17g} 0")
            lines.append(f"c p weight {-literal} 1 0")
        lines.extend(" ".join(map(str, clause)) + " 0" for clause in formula.clauses)
        return "\n".join(lines)
