"""Challengers for the anonymity, stronger semantic security and recovery games.

Each game is a single run against one adversary instance with one challenger
randomness stream; `estimate_advantage` repeats a game over independent
streams derived from (seed, trial index).
"""

from __future__ import annotations

import hashlib
import logging
import random
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

from aibeir import core
from aibeir.config import DEFAULT_IDENTITY_BITS, DEFAULT_IRM_IDENTITY, DEFAULT_QUERY_CAP
from aibeir.core import AibeirCiphertext, AibeirScheme, EncryptionCoins, FieldAccessRecorder
from aibeir.errors import AibeirError, ProtocolViolation
from aibeir.games.models import AdvantageEstimate, GameKind, GameTranscript, Validity
from aibeir.games.protocols import (
    AnonymityAdversary,
    Challenge,
    MasterKeyHolder,
    PublicInputs,
    RecoveryAdversary,
    RecoveryChallenge,
    SemanticAdversary,
    Witness,
)
from aibeir.pairing import CurveParams
from aibeir.schemes.protocols import IdentityBasedEncryption
from aibeir.wire import digest

log = logging.getLogger(__name__)

MIN_TRIALS = 100


@dataclass(frozen=True)
class GameSettings:
    """Knobs shared by every game.

    `scheme` replaces the composed scheme in the anonymity game only.
    `hand_master_key` is a harness switch for self-test adversaries.
    """

    n: int = DEFAULT_IDENTITY_BITS
    id_epsilon: bytes = DEFAULT_IRM_IDENTITY.encode()
    query_cap: int = DEFAULT_QUERY_CAP
    hand_master_key: bool = False
    scheme: IdentityBasedEncryption | None = None

    def composed_scheme(self) -> AibeirScheme:
        return AibeirScheme(self.n, self.id_epsilon)


def _digest_of(obj: Any) -> str:
    return digest(obj.to_bytes() if hasattr(obj, "to_bytes") else bytes(obj))


class GameOracle:
    """The only handle an adversary gets on secret keys during a game."""

    def __init__(
        self,
        transcript: GameTranscript,
        extract: Callable[[bytes], Any],
        recover: Callable[[Any], bytes | None] | None = None,
        cap: int = DEFAULT_QUERY_CAP,
    ):
        self._transcript = transcript
        self._extract = extract
        self._recover = recover
        self._cap = cap
        self._count = 0
        self.phase = 0
        self.forbidden: frozenset[bytes] = frozenset()
        self.extracted: set[bytes] = set()
        self.violation: str | None = None

    def begin_phase(self, phase: int, forbidden: frozenset[bytes] = frozenset()) -> None:
        self.phase = phase
        self.forbidden = forbidden
        self._count = 0

    def violate(self, reason: str, identity: bytes = b"") -> None:
        if self.violation is None:
            self.violation = reason
        self._transcript.record("violation", identity, digest(reason.encode()))
        log.warning("adversary violated the game rules: %s", reason)
        raise ProtocolViolation(reason)

    def _charge(self) -> None:
        self._count += 1
        if self._count > self._cap:
            self.violate(f"more than {self._cap} queries in phase {self.phase}")

    def extract(self, identity: bytes) -> Any:
        if not isinstance(identity, bytes):
            self.violate("identity must be bytes")
        self._charge()
        if identity in self.forbidden:
            self.violate("key-extraction query on a challenge identity", identity)
        try:
            key = self._extract(identity)
        except (AibeirError, ValueError) as exc:
            self.violate(f"extraction refused: {exc}", identity)
        self.extracted.add(identity)
        self._transcript.record("extract", identity, _digest_of(key))
        return key

    def recover(self, ciphertext: Any) -> bytes | None:
        if self._recover is None:
            self.violate("recover oracle is not available in this game")
        self._charge()
        result = self._recover(ciphertext)
        self._transcript.record("recover", result or b"", digest(result or b""))
        return result


def _hand_master_key(adversary: Any, msk: Any, settings: GameSettings, transcript: GameTranscript) -> None:
    if settings.hand_master_key and isinstance(adversary, MasterKeyHolder):
        adversary.receive_master_key(msk)
        transcript.master_key_handed = True
        transcript.record("master-key", b"", _digest_of(msk))


def _check_challenge(challenge: Any, identities: int, oracle: GameOracle) -> Challenge:
    if not isinstance(challenge, Challenge):
        oracle.violate("challenge has the wrong type")
    if len(challenge.identities) != identities:
        oracle.violate(f"challenge needs exactly {identities} identities")
    if len(set(challenge.identities)) != identities:
        oracle.violate("challenge identities must be distinct")
    if len(challenge.m0) != len(challenge.m1):
        oracle.violate("challenge messages differ in length")
    for identity in challenge.identities:
        if identity in oracle.extracted:
            oracle.violate("challenge identity was queried in phase 1", identity)
    return challenge


def _check_guess(guess: Any, needs_gamma: bool, oracle: GameOracle) -> tuple[int, ...]:
    bits = guess.as_tuple() if hasattr(guess, "as_tuple") else ()
    expected = 2 if needs_gamma else 1
    if len(bits) < expected or any(bit not in (0, 1) for bit in bits[:expected]):
        oracle.violate("guess is not a well-formed bit tuple")
    return bits[:expected]


def _run_distinguishing_game(
    kind: GameKind,
    adversary: AnonymityAdversary | SemanticAdversary,
    params: CurveParams,
    rng: random.Random,
    settings: GameSettings,
) -> GameTranscript:
    transcript = GameTranscript(game=kind)
    if kind is GameKind.ANON:
        scheme = settings.scheme or settings.composed_scheme()
        mpk, msk = scheme.setup(params, rng)
        irm = None
    else:
        scheme = settings.composed_scheme()
        mpk, msk, irm = core.setup(params, settings.n, settings.id_epsilon, rng)
    oracle = GameOracle(
        transcript, lambda identity: scheme.extract(mpk, msk, identity, rng), cap=settings.query_cap
    )
    needs_gamma = kind is GameKind.ANON

    try:
        adversary.receive_public(PublicInputs(game=kind, scheme=scheme, mpk=mpk, params=params, irm_key=irm))
        if irm is not None:
            transcript.record("irm-key", settings.id_epsilon, _digest_of(irm))
        _hand_master_key(adversary, msk, settings, transcript)

        oracle.begin_phase(1)
        adversary.query_phase(oracle, 1)
        challenge = _check_challenge(adversary.choose_challenge(), 2 if needs_gamma else 1, oracle)
        transcript.challenge_identities = challenge.identities

        b = rng.getrandbits(1)
        gamma = rng.getrandbits(1) if needs_gamma else 0
        transcript.hidden_bits = (b, gamma) if needs_gamma else (b,)
        try:
            ct = scheme.encrypt(mpk, challenge.identities[gamma], (challenge.m0, challenge.m1)[b], rng)
        except (AibeirError, ValueError) as exc:
            oracle.violate(f"challenge rejected: {exc}")
        ct_digest = digest(scheme.ciphertext_bytes(ct))
        for identity in challenge.identities:
            transcript.record("challenge", identity, ct_digest)
        adversary.receive_challenge(ct)

        oracle.begin_phase(2, frozenset(challenge.identities))
        adversary.query_phase(oracle, 2)
        transcript.guess = _check_guess(adversary.guess(), needs_gamma, oracle)
    except ProtocolViolation:
        pass

    transcript.violation = oracle.violation
    transcript.won = transcript.violation is None and transcript.guess == transcript.hidden_bits
    log.debug("%s game finished: won=%s", kind.value, transcript.won)
    return transcript


def run_anonymity_game(
    adversary: AnonymityAdversary,
    params: CurveParams,
    rng: random.Random,
    settings: GameSettings = GameSettings(),
) -> GameTranscript:
    """Joint message/identity guessing game; msk and the IRM key are withheld."""
    return _run_distinguishing_game(GameKind.ANON, adversary, params, rng, settings)


def run_stronger_semantic_game(
    adversary: SemanticAdversary,
    params: CurveParams,
    rng: random.Random,
    settings: GameSettings = GameSettings(),
) -> GameTranscript:
    """Message-only guessing game where the adversary also holds the IRM key."""
    return _run_distinguishing_game(GameKind.SSS, adversary, params, rng, settings)


def adjudicate(mpk: core.AibeirPublicKey, ciphertext: bytes, witness: Witness | None) -> Validity:
    """Classify a submitted ciphertext by deterministic re-encryption.

    Without a witness that reproduces the ciphertext byte for byte nothing is
    proven either way.
    """
    if witness is None:
        return Validity.UNPROVEN
    try:
        coins = EncryptionCoins(t=witness.t, r=witness.r, t_escrow=witness.t_escrow)
        honest = core.encrypt_with_coins(mpk, witness.identity, witness.message, coins)
        escrow_identity = witness.escrow_identity
        if escrow_identity is None or escrow_identity == witness.identity:
            return Validity.VALID if honest.to_bytes() == ciphertext else Validity.UNPROVEN
        escrow = core.encrypt_with_coins(mpk, escrow_identity, b"", coins).c3
        spliced = AibeirCiphertext(c1=honest.c1, c2=honest.c2, c3=escrow)
        return Validity.PROVABLY_INVALID if spliced.to_bytes() == ciphertext else Validity.UNPROVEN
    except (AibeirError, ValueError, TypeError) as exc:
        log.debug("witness rejected: %s", exc)
        return Validity.UNPROVEN


def _parse_ciphertext(data: Any, params: CurveParams) -> AibeirCiphertext | None:
    if isinstance(data, AibeirCiphertext):
        return data
    try:
        return AibeirCiphertext.from_bytes(bytes(data), params)
    except (AibeirError, TypeError, ValueError):
        return None


def run_recovery_game(
    adversary: RecoveryAdversary,
    params: CurveParams,
    rng: random.Random,
    settings: GameSettings = GameSettings(),
) -> GameTranscript:
    """Recovery game with key-extraction and recover oracles.

    The adversary wins if recover rejects or misnames a ciphertext proven
    valid, or names an identity it never extracted for a ciphertext proven
    invalid.
    """
    transcript = GameTranscript(game=GameKind.RECOVERY)
    mpk, msk, irm = core.setup(params, settings.n, settings.id_epsilon, rng)

    def recover_query(data: Any) -> bytes | None:
        ct = _parse_ciphertext(data, params)
        return None if ct is None else core.recover(mpk, irm, ct)

    oracle = GameOracle(
        transcript,
        lambda identity: core.extract(mpk, msk, identity, rng),
        recover=recover_query,
        cap=settings.query_cap,
    )
    scheme = settings.composed_scheme()

    try:
        adversary.receive_public(PublicInputs(game=GameKind.RECOVERY, scheme=scheme, mpk=mpk, params=params))
        _hand_master_key(adversary, msk, settings, transcript)
        oracle.begin_phase(1)
        adversary.query_phase(oracle, 1)
        challenge = adversary.choose_challenge()
        if not isinstance(challenge, RecoveryChallenge) or not isinstance(challenge.ciphertext, bytes):
            oracle.violate("challenge must be a RecoveryChallenge carrying bytes")
    except ProtocolViolation:
        transcript.violation = oracle.violation
        return transcript

    transcript.record("challenge", b"", digest(challenge.ciphertext))
    ct = _parse_ciphertext(challenge.ciphertext, params)
    if ct is not None:
        recorder = FieldAccessRecorder(ct)
        transcript.recovered = core.recover(mpk, irm, recorder)
        transcript.message_part_read = recorder.touched_message_part
    recovered = transcript.recovered
    transcript.record("recovered", recovered or b"", digest(recovered or b""))

    validity = adjudicate(mpk, challenge.ciphertext, challenge.witness)
    transcript.validity = validity
    if validity is Validity.VALID:
        transcript.won = recovered != challenge.witness.identity
    elif validity is Validity.PROVABLY_INVALID:
        transcript.won = recovered is not None and recovered not in oracle.extracted
    log.debug("recovery game finished: validity=%s won=%s", validity.value, transcript.won)
    return transcript


RUNNERS: dict[GameKind, Callable[..., GameTranscript]] = {
    GameKind.ANON: run_anonymity_game,
    GameKind.SSS: run_stronger_semantic_game,
    GameKind.RECOVERY: run_recovery_game,
}


def trial_seed(base: bytes, index: int) -> bytes:
    return hashlib.sha256(base + index.to_bytes(8, "big")).digest()


def estimate_advantage(
    adversary_factory: Callable[[random.Random], Any],
    game: GameKind,
    trials: int,
    params: CurveParams,
    rng: random.Random,
    settings: GameSettings = GameSettings(),
    workers: int = 1,
) -> AdvantageEstimate:
    """Monte-Carlo estimate over independent game runs.

    Trial i uses its own challenger and adversary streams derived from one
    draw of `rng` and i, so the result does not depend on `workers`.
    """
    if trials < MIN_TRIALS:
        raise ValueError(f"need at least {MIN_TRIALS} trials, got {trials}")
    base = rng.getrandbits(128).to_bytes(16, "big")
    runner = RUNNERS[GameKind(game)]

    def run_trial(index: int) -> GameTranscript:
        seed = trial_seed(base, index)
        adversary = adversary_factory(random.Random(seed + b"adversary"))
        return runner(adversary, params, random.Random(seed + b"challenger"), settings)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            transcripts = list(pool.map(run_trial, range(trials)))
    else:
        transcripts = [run_trial(i) for i in range(trials)]

    message_wins = identity_wins = None
    if game is GameKind.ANON:
        scored = [t for t in transcripts if not t.forfeited and t.guess is not None]
        message_wins = sum(t.guess[0] == t.hidden_bits[0] for t in scored)
        identity_wins = sum(t.guess[1] == t.hidden_bits[1] for t in scored)

    estimate = AdvantageEstimate(
        game=GameKind(game),
        trials=trials,
        wins=sum(t.won for t in transcripts),
        forfeits=sum(t.forfeited for t in transcripts),
        message_bit_wins=message_wins,
        identity_bit_wins=identity_wins,
        last_transcript=transcripts[-1],
    )
    log.info("estimate: %s", estimate.to_line())
    return estimate


def audit_transcript(transcript: GameTranscript) -> list[str]:
    """Post-hoc check of restriction enforcement and key hygiene.

    Returns the problems found; an empty list means the transcript is clean.
    """
    problems = []
    events = {q.event for q in transcript.queries}
    if transcript.forfeited and transcript.won:
        problems.append("forfeited game marked as won")
    if transcript.game in (GameKind.ANON, GameKind.SSS):
        leaked = set(transcript.identities_for("extract")) & set(transcript.challenge_identities)
        if leaked and not transcript.forfeited:
            problems.append("challenge identity extracted without a recorded violation")
    if "irm-key" in events and transcript.game is not GameKind.SSS:
        problems.append("IRM key handed out outside the stronger semantic game")
    if ("master-key" in events) != transcript.master_key_handed:
        problems.append("master-key event does not match the harness flag")
    if transcript.game is GameKind.RECOVERY:
        if transcript.message_part_read:
            problems.append("recover read the message part")
        if (
            transcript.won
            and transcript.validity is Validity.PROVABLY_INVALID
            and transcript.recovered in transcript.identities_for("extract")
        ):
            problems.append("win credited for an extracted identity")
    return problems
