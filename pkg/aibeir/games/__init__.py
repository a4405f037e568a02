"""Executable security games with pluggable adversaries."""

from aibeir.games.challenger import (
    GameSettings,
    audit_transcript,
    estimate_advantage,
    run_anonymity_game,
    run_recovery_game,
    run_stronger_semantic_game,
)
from aibeir.games.models import AdvantageEstimate, GameKind, GameTranscript, QueryRecord, Validity

__all__ = [
    "AdvantageEstimate",
    "GameKind",
    "GameSettings",
    "GameTranscript",
    "QueryRecord",
    "Validity",
    "audit_transcript",
    "estimate_advantage",
    "run_anonymity_game",
    "run_recovery_game",
    "run_stronger_semantic_game",
]
