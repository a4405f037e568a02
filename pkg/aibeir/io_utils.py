"""File I/O for keys, ciphertexts and plaintexts."""

import logging
import os
import tempfile
from pathlib import Path

from aibeir.config import restrict_permissions
from aibeir.errors import KeystoreError

log = logging.getLogger(__name__)


def read_file(path: Path | str) -> bytes:
    """Read a whole file.

    Raises:
        KeystoreError: if the file is missing or unreadable
    """
    path = Path(path)
    try:
        return path.read_bytes()
    except OSError as exc:
        raise KeystoreError(f"cannot read {path}: {exc.strerror or exc}") from exc


def write_file(path: Path | str, data: bytes, secret: bool = False) -> Path:
    """Write data next to its destination, then rename it into place.

    A reader never sees a partially written file. Secret files are limited to
    their owner before the rename.

    Returns:
        The destination path
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    except OSError as exc:
        raise KeystoreError(f"cannot write to {path.parent}: {exc.strerror or exc}") from exc
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        if secret:
            restrict_permissions(tmp_name)
        os.replace(tmp_name, path)
    except OSError as exc:
        Path(tmp_name).unlink(missing_ok=True)
        raise KeystoreError(f"cannot write {path}: {exc.strerror or exc}") from exc
    log.debug("wrote %d bytes to %s", len(data), path)
    return path
