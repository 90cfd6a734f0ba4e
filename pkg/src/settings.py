"""
Gestor de configuración persistente.

Carga límites de recursos y valores por defecto del simulador desde JSON y
permite sobreescribirlos con variables de entorno SOPSIM_<CAMPO>.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Mapping, Optional

from .storage import atomic_write_text, read_text_limited

logger = logging.getLogger(__name__)

# Ruta por defecto del archivo de configuración
DEFAULT_SETTINGS_PATH = Path.home() / ".sopsim" / "settings.json"
SETTINGS_PATH_ENV = "SOPSIM_SETTINGS"
ENV_PREFIX = "SOPSIM_"

METHODS = ("rank-dp", "fourier", "bucket", "brute", "statevector")
DECOMPOSITION_SOURCES = ("auto", "greedy", "caterpillar", "exact")


@dataclass
class SimulatorSettings:
    """Límites y preferencias del simulador."""

    # --- Límites de los oráculos y resolvedores exactos ---
    max_exact_treewidth_vertices: int = 14
    max_exact_rankwidth_vertices: int = 8
    max_brute_vars: int = 24
    max_statevector_qubits: int = 24
    max_wmc_vars: int = 24
    # Tamaño máximo de separador (variables) en eliminación por cubetas
    max_bucket_separator: int = 20

    # --- Numérico ---
    fourier_tolerance: float = 1e-6

    # --- Valores por defecto de la CLI ---
    default_method: str = "rank-dp"
    default_decomposition: str = "auto"

    def validate(self) -> None:
        """Valida y corrige valores fuera de rango."""
        self.max_exact_treewidth_vertices = max(1, min(20, self.max_exact_treewidth_vertices))
        self.max_exact_rankwidth_vertices = max(1, min(12, self.max_exact_rankwidth_vertices))
        self.max_brute_vars = max(0, min(30, self.max_brute_vars))
        self.max_statevector_qubits = max(1, min(28, self.max_statevector_qubits))
        self.max_wmc_vars = max(0, min(30, self.max_wmc_vars))
        self.max_bucket_separator = max(1, min(26, self.max_bucket_separator))
        self.fourier_tolerance = max(1e-12, min(0.49, self.fourier_tolerance))
        if self.default_method not in METHODS:
            self.default_method = "rank-dp"
        if self.default_decomposition not in DECOMPOSITION_SOURCES:
            self.default_decomposition = "auto"


def _coerce(default_value, value):
    """Devuelve (válido, valor) respetando el tipo del valor por defecto."""
    if isinstance(default_value, bool):
        return isinstance(value, bool), value
    if isinstance(default_value, int):
        return isinstance(value, int) and not isinstance(value, bool), value
    if isinstance(default_value, float):
        valid = isinstance(value, (int, float)) and not isinstance(value, bool)
        return valid, float(value) if valid else value
    return isinstance(value, type(default_value)), value


def _parse_env_value(default_value, raw: str):
    if isinstance(default_value, bool):
        return raw.strip().lower() in ("1", "true", "yes", "si", "sí")
    if isinstance(default_value, int):
        return int(raw)
    if isinstance(default_value, float):
        return float(raw)
    return raw.strip()


class SettingsManager:
    """
    Carga, guarda y provee acceso a la configuración del simulador.

    Persiste en ~/.sopsim/settings.json salvo que SOPSIM_SETTINGS indique otra ruta.
    """

    def __init__(
        self,
        path: Optional[Path] = None,
        environ: Optional[Mapping[str, str]] = None,
    ):
        environ = os.environ if environ is None else environ
        env_path = environ.get(SETTINGS_PATH_ENV)
        self._path = path or (Path(env_path) if env_path else DEFAULT_SETTINGS_PATH)
        self._settings = SimulatorSettings()
        self.load()
        self.apply_environment(environ)

    @property
    def settings(self) -> SimulatorSettings:
        return self._settings

    @property
    def path(self) -> Path:
        return self._path

    def load(self) -> None:
        """Carga la configuración desde disco. Si no existe, usa defaults."""
        if not self._path.exists():
            logger.debug("No se encontró archivo de configuración, usando valores por defecto")
            return

        try:
            data = json.loads(read_text_limited(self._path, max_bytes=262144))
            if not isinstance(data, dict):
                raise ValueError("La configuración debe ser un objeto JSON")
            defaults = SimulatorSettings()
            for key, value in data.items():
                if not hasattr(defaults, key):
                    continue
                valid, value = _coerce(getattr(defaults, key), value)
                if valid:
                    setattr(self._settings, key, value)
                else:
                    logger.warning(
                        "Valor inválido para %s; se conserva el valor por defecto",
                        key,
                    )
            self._settings.validate()
            logger.info(f"Configuración cargada desde {self._path}")
        except Exception as e:
            logger.warning(f"Error cargando configuración: {e}. Usando valores por defecto.")
            self._settings = SimulatorSettings()

    def apply_environment(self, environ: Mapping[str, str]) -> None:
        """Aplica variables SOPSIM_<CAMPO> encima de la configuración cargada."""
        for settings_field in fields(SimulatorSettings):
            name = ENV_PREFIX + settings_field.name.upper()
            if name not in environ:
                continue
            default_value = getattr(self._settings, settings_field.name)
            try:
                value = _parse_env_value(default_value, environ[name])
            except ValueError:
                logger.warning("Variable %s inválida; se ignora", name)
                continue
            setattr(self._settings, settings_field.name, value)
            logger.debug("Límite %s = %r desde el entorno", settings_field.name, value)
        self._settings.validate()

    def save(self) -> None:
        """Guarda la configuración actual en disco."""
        try:
            self._settings.validate()
            atomic_write_text(
                self._path,
                json.dumps(asdict(self._settings), ensure_ascii=False, indent=2),
            )
            logger.debug(f"Configuración guardada en {self._path}")
        except Exception as e:
            logger.warning(f"Error guardando configuración: {e}")

    def reset(self) -> None:
        """Restaura valores por defecto y guarda."""
        self._settings = SimulatorSettings()
        self.save()
        logger.info("Configuración restaurada a valores por defecto")
