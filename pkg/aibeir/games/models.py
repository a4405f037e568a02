"""Data models for game transcripts and advantage estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

# two-sided 99% normal quantile
Z_99 = 2.576


class GameKind(str, Enum):
    ANON = "anon"
    SSS = "sss"
    RECOVERY = "recovery"

    @property
    def baseline(self) -> float:
        """Win rate of a trivial adversary."""
        return {GameKind.ANON: 0.25, GameKind.SSS: 0.5, GameKind.RECOVERY: 0.0}[self]


class Validity(str, Enum):
    """How the recovery challenger classified a submitted ciphertext."""

    VALID = "valid"
    PROVABLY_INVALID = "provably-invalid"
    UNPROVEN = "unproven"


@dataclass(frozen=True)
class QueryRecord:
    """One event of a game: oracle query, challenge, key hand-over or violation."""

    event: str
    identity: bytes = b""
    digest: str = ""

    def to_line(self) -> str:
        return f"{self.event}\t{self.identity.hex()}\t{self.digest}"


@dataclass
class GameTranscript:
    game: GameKind
    queries: list[QueryRecord] = field(default_factory=list)
    challenge_identities: tuple[bytes, ...] = ()
    hidden_bits: tuple[int, ...] = ()
    guess: tuple[int, ...] | None = None
    won: bool = False
    violation: str | None = None
    master_key_handed: bool = False
    validity: Validity | None = None
    recovered: bytes | None = None
    message_part_read: bool = False

    @property
    def forfeited(self) -> bool:
        return self.violation is not None

    def record(self, event: str, identity: bytes = b"", digest: str = "") -> None:
        self.queries.append(QueryRecord(event=event, identity=identity, digest=digest))

    def identities_for(self, event: str) -> list[bytes]:
        return [q.identity for q in self.queries if q.event == event]

    def to_lines(self) -> list[str]:
        """Tab-separated export: event, identity hex, digest hex."""
        return [q.to_line() for q in self.queries]


@dataclass(frozen=True)
class AdvantageEstimate:
    game: GameKind
    trials: int
    wins: int
    forfeits: int = 0
    # marginal wins on the message bit and on the identity bit (anonymity game only)
    message_bit_wins: int | None = None
    identity_bit_wins: int | None = None
    last_transcript: GameTranscript | None = field(default=None, compare=False, repr=False)

    @property
    def point_estimate(self) -> float:
        return self.wins / self.trials

    @property
    def baseline(self) -> float:
        return self.game.baseline

    @property
    def bound_99(self) -> float:
        p_hat = self.point_estimate
        return Z_99 * math.sqrt(p_hat * (1 - p_hat) / self.trials)

    @property
    def advantage(self) -> float:
        return abs(self.point_estimate - self.baseline)

    def within(self, target: float, slack: float = 0.0) -> bool:
        """True if `target` lies inside the 99% interval, widened by `slack`."""
        return abs(self.point_estimate - target) <= self.bound_99 + slack

    def to_line(self) -> str:
        return (
            f"{self.game.value} {self.trials} {self.wins} "
            f"{self.point_estimate:.6f} {self.baseline:.6f} {self.bound_99:.6f}"
        )
