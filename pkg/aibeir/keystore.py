"""Directory keystore: one framed object per file, named <role>.<digest>.bin."""

from __future__ import annotations

import logging
from pathlib import Path

from aibeir.core import AibeirMasterKey, AibeirPublicKey, IrmKey
from aibeir.errors import KeystoreError
from aibeir.io_utils import read_file, write_file
from aibeir.wire import digest

log = logging.getLogger(__name__)

DIGEST_CHARS = 16
ROLES = ("mpk", "msk", "irm")
SECRET_ROLES = frozenset({"msk", "irm"})


class Keystore:
    """Holds the public key, master key and IRM key of one deployment."""

    def __init__(self, root: Path | str):
        self.root = Path(root)

    def _files(self, role: str) -> list[Path]:
        if not self.root.is_dir():
            return []
        return sorted(self.root.glob(f"{role}.*.bin"), key=lambda p: p.stat().st_mtime)

    def path_for(self, role: str) -> Path:
        files = self._files(role)
        if not files:
            raise KeystoreError(f"no {role} object in keystore {self.root}")
        return files[-1]

    def has(self, role: str) -> bool:
        return bool(self._files(role))

    def save(self, role: str, data: bytes) -> Path:
        """Store an object, replacing any older object of the same role."""
        if role not in ROLES:
            raise KeystoreError(f"unknown keystore role {role!r}")
        if self.root.exists() and not self.root.is_dir():
            raise KeystoreError(f"keystore path {self.root} is not a directory")
        stale = self._files(role)
        path = write_file(self.root / f"{role}.{digest(data)[:DIGEST_CHARS]}.bin", data, secret=role in SECRET_ROLES)
        for old in stale:
            if old != path:
                old.unlink(missing_ok=True)
        log.info("stored %s as %s", role, path.name)
        return path

    def load(self, role: str) -> bytes:
        """Read an object and check it against the digest in its file name."""
        path = self.path_for(role)
        data = read_file(path)
        expected = path.name.split(".")[1]
        if digest(data)[:DIGEST_CHARS] != expected:
            raise KeystoreError(f"{path.name} does not match its digest")
        return data

    def public_key(self) -> AibeirPublicKey:
        return AibeirPublicKey.from_bytes(self.load("mpk"))

    def master_key(self) -> AibeirMasterKey:
        return AibeirMasterKey.from_bytes(self.load("msk"), self.public_key().params)

    def irm_key(self) -> IrmKey:
        return IrmKey.from_bytes(self.load("irm"), self.public_key().params)
