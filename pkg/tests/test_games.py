import random

import pytest

from aibeir.games import (
    AdvantageEstimate,
    GameKind,
    GameSettings,
    GameTranscript,
    QueryRecord,
    Validity,
    audit_transcript,
    estimate_advantage,
    run_anonymity_game,
    run_recovery_game,
    run_stronger_semantic_game,
)
from aibeir.games.adversaries import (
    ADVERSARIES,
    BitFlipAdversary,
    CheatingAdversary,
    FrankensteinAdversary,
    HonestAdversary,
    IrmAdversary,
    RandomBytesAdversary,
    RandomGuesser,
    RestrictedQueryAdversary,
    TestingAdversary,
)
from aibeir.games.protocols import Challenge
from aibeir.schemes import BonehFranklinIbe, WatersIbe

SETTINGS = GameSettings(n=16)


class UnequalLengths(RandomGuesser):
    def choose_challenge(self):
        return Challenge(m0=b"short", m1=b"much longer", identities=(b"a", b"b"))


class GreedyQuerier(RandomGuesser):
    def query_phase(self, oracle, phase):
        for i in range(5):
            oracle.extract(f"greedy-{i}".encode())


class PeekingAdversary(RandomGuesser):
    def query_phase(self, oracle, phase):
        if phase == 1:
            oracle.extract(b"target")

    def choose_challenge(self):
        self.challenge = Challenge(m0=b"0" * 4, m1=b"1" * 4, identities=(b"target", b"other"))
        return self.challenge


class ReservedQuerier(RandomGuesser):
    def query_phase(self, oracle, phase):
        oracle.extract(b"IRM")


class OversizedQuerier(RandomGuesser):
    def query_phase(self, oracle, phase):
        oracle.extract(b"x" * 256)


def test_single_anonymity_game(desk_params):
    transcript = run_anonymity_game(RandomGuesser(random.Random(1)), desk_params, random.Random(2), SETTINGS)
    assert not transcript.forfeited
    assert len(transcript.hidden_bits) == 2
    challenges = [q for q in transcript.queries if q.event == "challenge"]
    assert len(challenges) == 2
    assert challenges[0].digest == challenges[1].digest
    assert transcript.won == (transcript.guess == transcript.hidden_bits)
    assert audit_transcript(transcript) == []
    assert len(transcript.to_lines()) == len(transcript.queries)


def test_random_guesser_near_baseline(desk_params):
    estimate = estimate_advantage(
        RandomGuesser, GameKind.ANON, 200, desk_params, random.Random(3), SETTINGS
    )
    assert estimate.forfeits == 0
    assert estimate.within(GameKind.ANON.baseline, slack=0.05)
    assert estimate.message_bit_wins is not None and estimate.identity_bit_wins is not None


@pytest.mark.slow
def test_random_guesser_anonymity_acceptance(desk_params):
    estimate = estimate_advantage(
        RandomGuesser, GameKind.ANON, 4000, desk_params, random.Random(4), SETTINGS
    )
    assert estimate.within(0.25)


@pytest.mark.slow
def test_random_guesser_semantic_acceptance(desk_params):
    estimate = estimate_advantage(
        RandomGuesser, GameKind.SSS, 4000, desk_params, random.Random(5), SETTINGS
    )
    assert estimate.within(0.5)


@pytest.mark.parametrize("game", [GameKind.ANON, GameKind.SSS])
def test_cheating_adversary_always_wins_with_master_key(desk_params, game):
    settings = GameSettings(n=16, hand_master_key=True)
    estimate = estimate_advantage(CheatingAdversary, game, 100, desk_params, random.Random(6), settings)
    assert estimate.wins == 100
    transcript = estimate.last_transcript
    assert transcript.master_key_handed
    assert audit_transcript(transcript) == []


def test_master_key_withheld_by_default(desk_params):
    adversary = CheatingAdversary(random.Random(1))
    transcript = run_anonymity_game(adversary, desk_params, random.Random(2), SETTINGS)
    assert adversary.msk is None
    assert not transcript.master_key_handed
    assert "master-key" not in {q.event for q in transcript.queries}


def test_restricted_query_forfeits(desk_params):
    for runner in (run_anonymity_game, run_stronger_semantic_game):
        transcript = runner(RestrictedQueryAdversary(random.Random(1)), desk_params, random.Random(2), SETTINGS)
        assert transcript.forfeited
        assert not transcript.won
        assert "violation" in {q.event for q in transcript.queries}
        assert audit_transcript(transcript) == []


@pytest.mark.parametrize(
    "adversary_class, reason",
    [
        (UnequalLengths, "differ in length"),
        (PeekingAdversary, "queried in phase 1"),
        (ReservedQuerier, "extraction refused"),
        (OversizedQuerier, "extraction refused"),
    ],
)
def test_challenge_rules_enforced(desk_params, adversary_class, reason):
    transcript = run_anonymity_game(adversary_class(random.Random(1)), desk_params, random.Random(2), SETTINGS)
    assert transcript.forfeited
    assert reason in transcript.violation
    assert not transcript.won


def test_query_cap_enforced(desk_params):
    settings = GameSettings(n=16, query_cap=3)
    transcript = run_anonymity_game(GreedyQuerier(random.Random(1)), desk_params, random.Random(2), settings)
    assert "more than 3 queries" in transcript.violation
    assert len(transcript.identities_for("extract")) == 3


def test_irm_key_reveals_identity_but_not_message(desk_params):
    adversary = IrmAdversary(random.Random(1))
    transcript = run_stronger_semantic_game(adversary, desk_params, random.Random(2), SETTINGS)
    assert adversary.recovered == transcript.challenge_identities[0]
    assert "irm-key" in {q.event for q in transcript.queries}
    assert audit_transcript(transcript) == []


def test_irm_key_withheld_in_anonymity_game(desk_params):
    adversary = IrmAdversary(random.Random(1))
    run_anonymity_game(adversary, desk_params, random.Random(2), SETTINGS)
    assert adversary.inputs.irm_key is None
    assert adversary.recovered is None


@pytest.mark.slow
def test_irm_adversary_semantic_acceptance(desk_params):
    estimate = estimate_advantage(
        IrmAdversary, GameKind.SSS, 4000, desk_params, random.Random(13), SETTINGS
    )
    assert estimate.forfeits == 0
    assert estimate.within(0.5)


def test_estimates_are_reproducible_and_worker_independent(desk_params):
    first = estimate_advantage(RandomGuesser, GameKind.SSS, 100, desk_params, random.Random(9), SETTINGS)
    second = estimate_advantage(RandomGuesser, GameKind.SSS, 100, desk_params, random.Random(9), SETTINGS)
    threaded = estimate_advantage(
        RandomGuesser, GameKind.SSS, 100, desk_params, random.Random(9), SETTINGS, workers=4
    )
    assert first == second == threaded


def test_too_few_trials(desk_params):
    with pytest.raises(ValueError):
        estimate_advantage(RandomGuesser, GameKind.ANON, 99, desk_params, random.Random(1), SETTINGS)


def test_testable_scheme_leaks_identity(desk_params):
    settings = GameSettings(scheme=WatersIbe(n=32))
    estimate = estimate_advantage(TestingAdversary, GameKind.ANON, 100, desk_params, random.Random(10), settings)
    assert estimate.identity_bit_wins == 100


def test_anonymous_scheme_resists_testing(desk_params):
    settings = GameSettings(scheme=BonehFranklinIbe())
    estimate = estimate_advantage(TestingAdversary, GameKind.ANON, 100, desk_params, random.Random(11), settings)
    assert estimate.within(0.25, slack=0.05)


def test_honest_submission(desk_params):
    adversary = HonestAdversary(random.Random(1))
    transcript = run_recovery_game(adversary, desk_params, random.Random(2), SETTINGS)
    assert transcript.validity is Validity.VALID
    assert transcript.recovered == adversary.identity
    assert not transcript.won
    assert not transcript.message_part_read
    assert transcript.identities_for("recover") == [adversary.identity]
    assert audit_transcript(transcript) == []


def test_frankenstein_submission(desk_params):
    transcript = run_recovery_game(FrankensteinAdversary(random.Random(1)), desk_params, random.Random(2), SETTINGS)
    assert transcript.validity is Validity.PROVABLY_INVALID
    assert transcript.recovered is None
    assert not transcript.won


@pytest.mark.parametrize("adversary_class", [RandomBytesAdversary, BitFlipAdversary])
def test_unproven_submissions_cannot_win(desk_params, adversary_class):
    transcript = run_recovery_game(adversary_class(random.Random(1)), desk_params, random.Random(2), SETTINGS)
    assert transcript.validity is Validity.UNPROVEN
    assert not transcript.won


@pytest.mark.parametrize("name", ["honest", "frankenstein", "random-bytes", "bit-flip"])
def test_recovery_adversaries_never_win(desk_params, name):
    adversary_class, games = ADVERSARIES[name]
    assert games == frozenset({GameKind.RECOVERY})
    estimate = estimate_advantage(adversary_class, GameKind.RECOVERY, 100, desk_params, random.Random(12), SETTINGS)
    assert estimate.wins == 0


def test_audit_flags_inconsistent_transcripts():
    transcript = GameTranscript(game=GameKind.ANON, challenge_identities=(b"alice",))
    transcript.record("extract", b"alice")
    transcript.record("irm-key", b"IRM")
    transcript.master_key_handed = True
    problems = audit_transcript(transcript)
    assert len(problems) == 3


def test_advantage_estimate_line():
    estimate = AdvantageEstimate(game=GameKind.ANON, trials=100, wins=50)
    assert estimate.point_estimate == 0.5
    assert estimate.advantage == 0.25
    assert estimate.to_line() == "anon 100 50 0.500000 0.250000 0.128800"


def test_query_record_line():
    record = QueryRecord(event="extract", identity=b"bob", digest="ab")
    assert record.to_line() == "extract\t626f62\tab"
