"""Protocol definitions for identity-based encryption schemes."""

from __future__ import annotations

import random
from typing import Any, Protocol, runtime_checkable

from aibeir.pairing import CurveParams


@runtime_checkable
class IdentityBasedEncryption(Protocol):
    """Setup / Extract / Encrypt / Decrypt over byte identities and byte messages."""

    def setup(self, params: CurveParams, rng: random.Random) -> tuple[Any, Any]:
        """Return (public key, master key)."""
        ...

    def extract(self, pk: Any, msk: Any, identity: bytes, rng: random.Random) -> Any:
        """Derive the secret key of an identity."""
        ...

    def encrypt(self, pk: Any, identity: bytes, msg: bytes, rng: random.Random) -> Any:
        """Encrypt a byte message to an identity."""
        ...

    def decrypt(self, pk: Any, sk: Any, ct: Any) -> bytes:
        """Decrypt; a mismatched key yields garbage or raises AibeirError."""
        ...

    def ciphertext_bytes(self, ct: Any) -> bytes:
        """Canonical wire form of a ciphertext."""
        ...


@runtime_checkable
class TestableIdentityBasedEncryption(IdentityBasedEncryption, Protocol):
    """An IBE with a public predicate deciding which identity a ciphertext is under."""

    def test(self, pk: Any, identity: bytes, ct: Any) -> bool:
        """True if the identity-bearing part of `ct` is under `identity`."""
        ...
