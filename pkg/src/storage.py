"""Lectura y escritura defensiva de circuitos, descomposiciones y resultados."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path


MAX_INPUT_BYTES = 8 * 1024 * 1024


def _validate_file_path(path: Path) -> None:
    if path.is_symlink():
        raise ValueError(f"No se permiten enlaces: {path}")
    if path.exists() and not path.is_file():
        raise ValueError(f"La ruta no es un archivo regular: {path}")


def read_text_limited(
    path: Path, max_bytes: int = MAX_INPUT_BYTES, encoding: str = "utf-8"
) -> str:
    """Lee un archivo regular, no enlazado y con tamaño limitado."""
    path = Path(path)
    _validate_file_path(path)
    if path.stat().st_size > max_bytes:
        raise ValueError(f"El archivo es demasiado grande: {path}")
    return path.read_text(encoding=encoding)


def read_bytes_limited(path: Path, max_bytes: int = MAX_INPUT_BYTES) -> bytes:
    """Como read_text_limited, pero sin decodificar (el parser informa la línea)."""
    path = Path(path)
    _validate_file_path(path)
    if path.stat().st_size > max_bytes:
        raise ValueError(f"El archivo es demasiado grande: {path}")
    return path.read_bytes()


def atomic_write_text(
    path: Path, content: str, encoding: str = "utf-8"
) -> None:
    """Escribe texto mediante un temporal exclusivo y reemplazo atómico."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.parent.is_symlink():
        raise ValueError(f"No se permiten enlaces en directorios: {path.parent}")
    _validate_file_path(path)

    temporary_path: Path | None = None
    try:
        with tempfile.NamedTemporaryFile(
            mode="w",
            encoding=encoding,
            dir=path.parent,
            prefix=f".{path.name}.",
            suffix=".tmp",
            delete=False,
            newline="\n",
        ) as temporary_file:
            temporary_path = Path(temporary_file.name)
            temporary_file.write(content)
            temporary_file.flush()
            os.fsync(temporary_file.fileno())
        os.replace(temporary_path, path)
    except Exception:
        if temporary_path is not None:
            try:
                temporary_path.unlink(missing_ok=True)
            except OSError:
                pass
        raise
