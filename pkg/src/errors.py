"""
Jerarquía de errores del simulador.

Todos derivan de ValueError para que el código que ya captura ValueError
siga funcionando. Cada categoría lleva el código de salida que usa la CLI.
"""

from typing import Optional


class SopSimError(ValueError):
    """Error base con código de salida asociado."""

    exit_code = 3


class UsageError(SopSimError):
    """Argumentos de línea de comandos inválidos o incompatibles."""

    exit_code = 1


class CircuitParseError(SopSimError):
    """Error de sintaxis o de validación al leer un circuito `.sqc`."""

    exit_code = 2

    def __init__(self, message: str, line_number: int):
        super().__init__(f"línea {line_number}: {message}")
        self.line_number = line_number


class FormatParseError(SopSimError):
    """Error de sintaxis en archivos `.g`, `.rdec` o de corpus."""

    exit_code = 2

    def __init__(self, message: str, line_number: Optional[int] = None):
        prefix = f"línea {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number


class ValidationError(SopSimError):
    """Un objeto bien formado no cumple sus invariantes."""

    exit_code = 3


class CircuitValidationError(ValidationError):
    pass


class DecompositionError(ValidationError):
    """La descomposición no corresponde al grafo o no es válida."""

    def __init__(self, message: str, node: Optional[str] = None):
        super().__init__(message)
        self.node = node


class NotATreeError(DecompositionError):
    pass


class DegreeExceededError(DecompositionError):
    pass


class LeafMismatchError(DecompositionError):
    pass


class InconsistentInstanceError(ValidationError):
    """La instancia SOP es inconsistente: la amplitud es exactamente 0."""


class FourierPrecisionError(ValidationError):
    """El redondeo de los conteos de Fourier supera la tolerancia."""


class ResourceCapError(SopSimError):
    """Se superó un límite de recursos configurado."""

    exit_code = 4

    def __init__(self, what: str, limit: int, actual: int):
        super().__init__(
            f"{what}: {actual} supera el límite configurado de {limit}"
        )
        self.limit = limit
        self.actual = actual
