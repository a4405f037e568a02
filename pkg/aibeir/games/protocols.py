"""Protocol definitions for security-game adversaries and the values they exchange."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Protocol, runtime_checkable

from aibeir.core import IrmKey
from aibeir.games.models import GameKind
from aibeir.pairing import CurveParams
from aibeir.schemes.protocols import IdentityBasedEncryption


@dataclass(frozen=True)
class PublicInputs:
    """Everything the challenger hands over at setup.

    `irm_key` is set only in the stronger semantic security game.
    """

    game: GameKind
    scheme: IdentityBasedEncryption
    mpk: Any
    params: CurveParams
    irm_key: IrmKey | None = None


@dataclass(frozen=True)
class Challenge:
    """Two equal-length messages plus one identity (SSS) or two (ANON)."""

    m0: bytes
    m1: bytes
    identities: tuple[bytes, ...]


@dataclass(frozen=True)
class Guess:
    b: int
    gamma: int | None = None

    def as_tuple(self) -> tuple[int, ...]:
        return (self.b,) if self.gamma is None else (self.b, self.gamma)


@dataclass(frozen=True)
class Witness:
    """Encryption inputs that let the challenger re-encrypt a submitted ciphertext.

    `escrow_identity`, when it differs from `identity`, claims c3 was produced
    for that identity while (c1, c2) were produced for `identity`.
    """

    message: bytes
    identity: bytes
    t: int
    r: int
    t_escrow: int
    escrow_identity: bytes | None = None


@dataclass(frozen=True)
class RecoveryChallenge:
    ciphertext: bytes
    witness: Witness | None = None


class Oracle(Protocol):
    """What an adversary may call during a query phase."""

    def extract(self, identity: bytes) -> Any:
        """Key-extraction query."""
        ...

    def recover(self, ciphertext: Any) -> bytes | None:
        """Recover query; available in the recovery game only."""
        ...


class Adversary(Protocol):
    def receive_public(self, inputs: PublicInputs) -> None:
        ...

    def query_phase(self, oracle: Oracle, phase: int) -> None:
        """Phase 1 before the challenge, phase 2 after it."""
        ...


@runtime_checkable
class AnonymityAdversary(Adversary, Protocol):
    def choose_challenge(self) -> Challenge:
        """Two messages and two distinct identities."""
        ...

    def receive_challenge(self, ciphertext: Any) -> None:
        ...

    def guess(self) -> Guess:
        """Guess of (b, gamma)."""
        ...


@runtime_checkable
class SemanticAdversary(Adversary, Protocol):
    def choose_challenge(self) -> Challenge:
        """Two messages and a single target identity."""
        ...

    def receive_challenge(self, ciphertext: Any) -> None:
        ...

    def guess(self) -> Guess:
        """Guess of b; gamma is ignored."""
        ...


@runtime_checkable
class RecoveryAdversary(Adversary, Protocol):
    def choose_challenge(self) -> RecoveryChallenge:
        ...


@runtime_checkable
class MasterKeyHolder(Protocol):
    """Harness-only: adversaries that accept the master key out of band."""

    def receive_master_key(self, msk: Any) -> None:
        ...
