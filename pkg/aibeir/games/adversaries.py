"""Reference adversaries used to exercise the challengers."""

from __future__ import annotations

import hashlib
import logging
import random
from typing import Any

from aibeir import core
from aibeir.core import AibeirCiphertext, EncryptionCoins
from aibeir.errors import AibeirError
from aibeir.games.models import GameKind
from aibeir.games.protocols import (
    Challenge,
    Guess,
    Oracle,
    PublicInputs,
    RecoveryChallenge,
    Witness,
)

log = logging.getLogger(__name__)

MESSAGE_BYTES = 16


def _random_identity(rng: random.Random, label: str) -> bytes:
    return f"{label}-{rng.getrandbits(48):012x}".encode()


class _ChallengeChooser:
    """Shared plumbing: picks random equal-length messages and fresh identities."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.inputs: PublicInputs | None = None
        self.challenge: Challenge | None = None
        self.ciphertext: Any = None

    def receive_public(self, inputs: PublicInputs) -> None:
        self.inputs = inputs

    def query_phase(self, oracle: Oracle, phase: int) -> None:
        pass

    def choose_challenge(self) -> Challenge:
        count = 2 if self.inputs.game is GameKind.ANON else 1
        self.challenge = Challenge(
            m0=self.rng.randbytes(MESSAGE_BYTES),
            m1=self.rng.randbytes(MESSAGE_BYTES),
            identities=tuple(_random_identity(self.rng, f"user{i}") for i in range(count)),
        )
        return self.challenge

    def receive_challenge(self, ciphertext: Any) -> None:
        self.ciphertext = ciphertext

    def _random_guess(self) -> Guess:
        return Guess(b=self.rng.getrandbits(1), gamma=self.rng.getrandbits(1))


class RandomGuesser(_ChallengeChooser):
    """Ignores everything and guesses uniformly."""

    def guess(self) -> Guess:
        return self._random_guess()


class CheatingAdversary(_ChallengeChooser):
    """Harness self-test: decrypts the challenge with keys it derives from msk.

    Without the master key it falls back to random guessing.
    """

    def __init__(self, rng: random.Random):
        super().__init__(rng)
        self.msk: Any = None

    def receive_master_key(self, msk: Any) -> None:
        self.msk = msk

    def _opens_to(self, identity: bytes) -> bytes | None:
        scheme, mpk = self.inputs.scheme, self.inputs.mpk
        try:
            key = scheme.extract(mpk, self.msk, identity, self.rng)
            return scheme.decrypt(mpk, key, self.ciphertext)
        except AibeirError:
            return None

    def guess(self) -> Guess:
        if self.msk is None:
            return self._random_guess()
        messages = (self.challenge.m0, self.challenge.m1)
        for gamma, identity in enumerate(self.challenge.identities):
            plaintext = self._opens_to(identity)
            if plaintext in messages:
                return Guess(b=messages.index(plaintext), gamma=gamma)
        return self._random_guess()


class IrmAdversary(_ChallengeChooser):
    """Holds the IRM key and recovers the challenge identity, then guesses b.

    Knowing the recipient says nothing about which message was encrypted.
    """

    def __init__(self, rng: random.Random):
        super().__init__(rng)
        self.recovered: bytes | None = None

    def receive_challenge(self, ciphertext: AibeirCiphertext) -> None:
        super().receive_challenge(ciphertext)
        if self.inputs.irm_key is not None:
            self.recovered = core.recover(self.inputs.mpk, self.inputs.irm_key, ciphertext)

    def guess(self) -> Guess:
        if self.recovered is None:
            return Guess(b=self.rng.getrandbits(1))
        # bet on the recovered identity together with the testable layer's c1
        digest = hashlib.sha256(self.recovered + self.ciphertext.c1).digest()
        return Guess(b=digest[0] & 1)


class RestrictedQueryAdversary(_ChallengeChooser):
    """Asks for the key of a challenge identity after the challenge."""

    def query_phase(self, oracle: Oracle, phase: int) -> None:
        if phase == 2:
            oracle.extract(self.challenge.identities[0])

    def guess(self) -> Guess:
        return self._random_guess()


class TestingAdversary(_ChallengeChooser):
    """Runs the public Test predicate of a testable scheme on the challenge.

    Against a testable IBE this pins down gamma; against anything else it
    guesses.
    """

    __test__ = False

    def guess(self) -> Guess:
        scheme = self.inputs.scheme
        b = self.rng.getrandbits(1)
        if not hasattr(scheme, "test"):
            return Guess(b=b, gamma=self.rng.getrandbits(1))
        id0 = self.challenge.identities[0]
        return Guess(b=b, gamma=0 if scheme.test(self.inputs.mpk, id0, self.ciphertext) else 1)


class _Submitter:
    """Recovery-game plumbing: builds honest ciphertexts with known coins."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.inputs: PublicInputs | None = None
        self.identity = _random_identity(rng, "target")
        self.message = rng.randbytes(MESSAGE_BYTES)

    def receive_public(self, inputs: PublicInputs) -> None:
        self.inputs = inputs

    def query_phase(self, oracle: Oracle, phase: int) -> None:
        pass

    def _coins(self) -> EncryptionCoins:
        return EncryptionCoins.draw(self.inputs.params, self.rng)

    def _honest(self, identity: bytes, coins: EncryptionCoins) -> AibeirCiphertext:
        return core.encrypt_with_coins(self.inputs.mpk, identity, self.message, coins)

    def _witness(self, coins: EncryptionCoins, escrow_identity: bytes | None = None) -> Witness:
        return Witness(
            message=self.message,
            identity=self.identity,
            t=coins.t,
            r=coins.r,
            t_escrow=coins.t_escrow,
            escrow_identity=escrow_identity,
        )


class HonestAdversary(_Submitter):
    """Submits a properly encrypted ciphertext with its witness."""

    def query_phase(self, oracle: Oracle, phase: int) -> None:
        oracle.extract(_random_identity(self.rng, "bystander"))
        trial = core.encrypt(self.inputs.mpk, self.identity, self.message, self.rng)
        oracle.recover(trial.to_bytes())

    def choose_challenge(self) -> RecoveryChallenge:
        coins = self._coins()
        return RecoveryChallenge(self._honest(self.identity, coins).to_bytes(), self._witness(coins))


class FrankensteinAdversary(_Submitter):
    """Splices the escrow part of another identity's ciphertext onto c1, c2."""

    def __init__(self, rng: random.Random):
        super().__init__(rng)
        self.other = _random_identity(rng, "decoy")

    def choose_challenge(self) -> RecoveryChallenge:
        coins = self._coins()
        honest = self._honest(self.identity, coins)
        escrow = self._honest(self.other, coins).c3
        spliced = AibeirCiphertext(c1=honest.c1, c2=honest.c2, c3=escrow)
        return RecoveryChallenge(spliced.to_bytes(), self._witness(coins, escrow_identity=self.other))


class RandomBytesAdversary(_Submitter):
    """Submits noise of a plausible ciphertext length and no witness."""

    def choose_challenge(self) -> RecoveryChallenge:
        size = len(self._honest(self.identity, self._coins()).to_bytes())
        return RecoveryChallenge(self.rng.randbytes(size))


class BitFlipAdversary(_Submitter):
    """Flips one bit of an honest ciphertext and keeps the original witness."""

    def __init__(self, rng: random.Random):
        super().__init__(rng)
        self.flipped_bit: int | None = None

    def choose_challenge(self) -> RecoveryChallenge:
        coins = self._coins()
        data = bytearray(self._honest(self.identity, coins).to_bytes())
        self.flipped_bit = self.rng.randrange(8 * len(data))
        data[self.flipped_bit // 8] ^= 1 << (self.flipped_bit % 8)
        return RecoveryChallenge(bytes(data), self._witness(coins))


# name -> (class, games it can play)
ADVERSARIES: dict[str, tuple[type, frozenset[GameKind]]] = {
    "random": (RandomGuesser, frozenset({GameKind.ANON, GameKind.SSS})),
    "cheating": (CheatingAdversary, frozenset({GameKind.ANON, GameKind.SSS})),
    "irm": (IrmAdversary, frozenset({GameKind.SSS})),
    "restricted": (RestrictedQueryAdversary, frozenset({GameKind.ANON, GameKind.SSS})),
    "honest": (HonestAdversary, frozenset({GameKind.RECOVERY})),
    "frankenstein": (FrankensteinAdversary, frozenset({GameKind.RECOVERY})),
    "random-bytes": (RandomBytesAdversary, frozenset({GameKind.RECOVERY})),
    "bit-flip": (BitFlipAdversary, frozenset({GameKind.RECOVERY})),
}
