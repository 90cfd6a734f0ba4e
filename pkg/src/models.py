"""
Modelos de datos compartidos entre extractores, evaluadores y oráculos.

Conteos por residuo N_0..N_{r-1} y la amplitud que se reconstruye de ellos.
"""

import cmath
from dataclasses import dataclass
from enum import Enum


class SopStatus(Enum):
    """Estado de una instancia tras fijar la frontera."""

    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"


def root_of_unity(r: int, k: int) -> complex:
    """ω_r^k con los valores de cuarto de vuelta exactos."""
    k %= r
    if (4 * k) % r == 0:
        return (1, 1j, -1, -1j)[(4 * k) // r]
    return cmath.exp(2j * cmath.pi * k / r)


@dataclass(frozen=True)
class ResidueCounts:
    """Vector N_j = #{x | f(x) ≡ j (mod r)} con enteros de precisión arbitraria."""

    r: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.r:
            raise ValueError("El vector de conteos debe tener longitud r")
        if any(count < 0 for count in self.counts):
            raise ValueError("Los conteos deben ser no negativos")

    @classmethod
    def single(cls, r: int, residue: int) -> "ResidueCounts":
        counts = [0] * r
        counts[residue % r] = 1
        return cls(r, tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def shifted(self, c: int) -> "ResidueCounts":
        """Conteos de f + c: N'_j = N_{j-c}."""
        return ResidueCounts(
            self.r, tuple(self.counts[(j - c) % self.r] for j in range(self.r))
        )

    def phase_sum(self) -> complex:
        """Σ_j N_j ω_r^j (sin normalizar)."""
        # ω^{j + r/2} = -ω^j: se cancela en enteros antes de pasar a flotante
        half = self.r // 2
        total = 0j
        for j in range(half):
            weight = self.counts[j] - self.counts[j + half]
            if weight:
                total += weight * root_of_unity(self.r, j)
        return total

    def __str__(self) -> str:
        return "(" + ",".join(str(count) for count in self.counts) + ")"


@dataclass(frozen=True)
class Amplitude:
    """Amplitud ⟨z|C|y⟩ = 2^{-m_H/2} Σ_j N_j ω_r^j."""

    counts: ResidueCounts
    hadamard_count: int
    numeric: complex

    @property
    def re(self) -> float:
        return self.numeric.real

    @property
    def im(self) -> float:
        return self.numeric.imag


def amplitude_from_counts(
    counts: ResidueCounts, hadamard_count: int, status: SopStatus = SopStatus.CONSISTENT
) -> Amplitude:
    """Convierte conteos por residuo en amplitud; inconsistente ⇒ exactamente 0."""
    if status is SopStatus.INCONSISTENT:
        return Amplitude(counts, hadamard_count, 0j)
    numeric = counts.phase_sum() * 2.0 ** (-hadamard_count / 2)
    return Amplitude(counts, hadamard_count, complex(numeric))
