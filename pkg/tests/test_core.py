import random

import pytest

from aibeir import core
from aibeir.core import (
    MAX_MESSAGE_BYTES,
    AibeirCiphertext,
    AibeirMasterKey,
    AibeirPublicKey,
    AibeirScheme,
    AibeirUserKey,
    EncryptionCoins,
    FieldAccessRecorder,
    IrmKey,
)
from aibeir.errors import (
    FramingError,
    IdentityTooLongError,
    MalformedC0Error,
    MessageTooLongError,
    ReservedIdentityError,
)
from aibeir.pairing import GroupElement, serialize_g
from aibeir.schemes import IdentityBasedEncryption
from aibeir.schemes.anonymous import AnonCiphertext, aibe_encrypt
from aibeir.schemes.testable import tibe_encrypt, tibe_verify_key


@pytest.fixture(scope="module")
def alice(deployment):
    mpk, msk, _ = deployment
    return core.extract(mpk, msk, b"alice", random.Random(1))


def test_irm_key_is_valid_for_reserved_identity(deployment):
    mpk, _, irm = deployment
    assert tibe_verify_key(mpk.mpk_t, mpk.bit_identity(mpk.id_epsilon), irm.sk_t_epsilon)


def test_setup_requires_reserved_identity(desk_params, rng):
    with pytest.raises(ValueError):
        core.setup(desk_params, 8, b"", rng)


def test_independent_setups(desk_params):
    rng = random.Random(3)
    scalars = {core.setup(desk_params, 4, b"IRM", rng)[1].msk_a.s for _ in range(50)}
    assert len(scalars) == 50


def test_extracted_keys_verify(deployment, alice):
    mpk, _, _ = deployment
    assert core.verify_user_key(mpk, alice)
    assert not core.verify_user_key(mpk, AibeirUserKey(alice.sk_a, alice.sk_t, b"bob"))


def test_reserved_identity_cannot_be_extracted(deployment, rng):
    mpk, msk, _ = deployment
    with pytest.raises(ReservedIdentityError):
        core.extract(mpk, msk, mpk.id_epsilon, rng)


def test_full_pipeline(deployment, alice, rng):
    mpk, _, irm = deployment
    for size in (0, 1, 100, 1000):
        msg = rng.randbytes(size)
        ct = core.encrypt(mpk, b"alice", msg, rng)
        assert core.decrypt(mpk, alice, ct) == msg
        assert core.decrypt(None, alice, ct) == msg
        assert core.recover(mpk, irm, ct) == b"alice"


def test_wrong_user_key_fails_c0(deployment, rng):
    mpk, msk, _ = deployment
    bob = core.extract(mpk, msk, b"bob", rng)
    failures = 0
    for _ in range(100):
        ct = core.encrypt(mpk, b"alice", b"secret", rng)
        try:
            core.decrypt(mpk, bob, ct)
        except MalformedC0Error:
            failures += 1
    assert failures == 100


def test_encrypt_rejects_bad_inputs(deployment, rng):
    mpk, _, _ = deployment
    with pytest.raises(ReservedIdentityError):
        core.encrypt(mpk, mpk.id_epsilon, b"x", rng)
    with pytest.raises(IdentityTooLongError):
        core.encrypt(mpk, b"x" * 256, b"x", rng)
    with pytest.raises(MessageTooLongError):
        core.encrypt(mpk, b"alice", bytes(MAX_MESSAGE_BYTES + 1), rng)


def test_largest_message_round_trips(deployment, alice, rng):
    mpk, _, _ = deployment
    msg = bytes(MAX_MESSAGE_BYTES)
    ct = core.encrypt(mpk, b"alice", msg, rng)
    parsed = AibeirCiphertext.from_bytes(ct.to_bytes(), mpk.params)
    assert core.decrypt(mpk, alice, parsed) == msg


def test_coins_make_encryption_deterministic(deployment, rng):
    mpk, _, _ = deployment
    coins = EncryptionCoins.draw(mpk.params, rng)
    a = core.encrypt_with_coins(mpk, b"alice", b"msg", coins)
    b = core.encrypt_with_coins(mpk, b"alice", b"msg", coins)
    assert a.to_bytes() == b.to_bytes()


def test_length_depends_only_on_sizes(deployment, rng):
    mpk, _, _ = deployment
    identities = (b"alice", b"bobby", b"carol")
    lengths = {len(core.encrypt(mpk, identity, b"m" * 50, rng).to_bytes()) for identity in identities}
    assert len(lengths) == 1


def test_frankenstein_ciphertexts_are_rejected(deployment, rng):
    mpk, _, irm = deployment
    for i in range(30):
        first = core.encrypt(mpk, b"alice", b"msg", rng)
        second = core.encrypt(mpk, f"user-{i}".encode(), b"msg", rng)
        spliced = AibeirCiphertext(c1=first.c1, c2=first.c2, c3=second.c3)
        assert core.recover(mpk, irm, spliced) is None


def test_random_escrow_part_is_rejected(deployment, rng):
    mpk, _, irm = deployment
    honest = core.encrypt(mpk, b"alice", b"msg", rng)
    for _ in range(30):
        c3 = tibe_encrypt(mpk.mpk_t, mpk.bit_identity(mpk.id_epsilon), rng.randbytes(5), rng)
        assert core.recover(mpk, irm, AibeirCiphertext(c1=honest.c1, c2=honest.c2, c3=c3)) is None


def test_degenerate_c0_is_rejected(deployment, rng):
    mpk, _, irm = deployment
    identity = serialize_g(GroupElement.identity(mpk.params))
    honest = core.encrypt(mpk, b"alice", b"msg", rng)
    c2 = aibe_encrypt(mpk.mpk_a, b"alice", identity + identity, rng)
    assert core.recover(mpk, irm, AibeirCiphertext(c1=honest.c1, c2=c2, c3=honest.c3)) is None


def test_recover_never_reads_message_part(deployment, rng):
    mpk, _, irm = deployment
    ct = core.encrypt(mpk, b"alice", b"msg", rng)
    recorder = FieldAccessRecorder(ct)
    assert core.recover(mpk, irm, recorder) == b"alice"
    assert "c1" not in recorder.accessed
    assert not recorder.touched_message_part
    assert set(recorder.accessed) <= {"c2", "c3"}


def test_serialization(deployment, alice, rng):
    mpk, msk, irm = deployment
    params = mpk.params
    assert AibeirPublicKey.from_bytes(mpk.to_bytes()) == mpk
    assert AibeirMasterKey.from_bytes(msk.to_bytes(), params) == msk
    assert IrmKey.from_bytes(irm.to_bytes(), params) == irm
    assert AibeirUserKey.from_bytes(alice.to_bytes()) == alice
    ct = core.encrypt(mpk, b"alice", b"msg", rng)
    assert AibeirCiphertext.from_bytes(ct.to_bytes(), params) == ct


def test_master_key_without_alpha_still_extracts(deployment, rng):
    mpk, msk, _ = deployment
    stripped = AibeirMasterKey.from_bytes(msk.to_bytes(include_alpha=False), mpk.params)
    assert core.verify_user_key(mpk, core.extract(mpk, stripped, b"dave", rng))


def test_truncated_ciphertext_rejected(deployment, rng):
    mpk, _, _ = deployment
    data = core.encrypt(mpk, b"alice", b"msg", rng).to_bytes()
    with pytest.raises(FramingError):
        AibeirCiphertext.from_bytes(data[:-3], mpk.params)


def test_secret_objects_are_marked(deployment, alice):
    _, msk, irm = deployment
    for data in (msk.to_bytes(), irm.to_bytes(), alice.to_bytes()):
        assert data[6] == 0x53


def test_scheme_adapter(desk_params, rng):
    scheme = AibeirScheme(n=8, id_epsilon=b"IRM")
    assert isinstance(scheme, IdentityBasedEncryption)
    mpk, msk = scheme.setup(desk_params, rng)
    ct = scheme.encrypt(mpk, b"erin", b"hello", rng)
    assert scheme.decrypt(mpk, scheme.extract(mpk, msk, b"erin", rng), ct) == b"hello"


@pytest.mark.slow
def test_correctness_acceptance(desk_params):
    rng = random.Random(500)
    mpk, msk, irm = core.setup(desk_params, 128, b"IRM", rng)
    for i in range(500):
        identity = f"user-{i % 25}".encode()
        key = core.extract(mpk, msk, identity, rng)
        msg = rng.randbytes(rng.randrange(0, 200))
        ct = core.encrypt(mpk, identity, msg, rng)
        assert core.decrypt(mpk, key, ct) == msg
        assert core.recover(mpk, irm, ct) == identity


@pytest.mark.slow
def test_recovery_soundness_acceptance(deployment):
    mpk, _, irm = deployment
    rng = random.Random(1000)
    for i in range(1000):
        honest = core.encrypt(mpk, b"alice", b"msg", rng)
        if i % 2:
            other = core.encrypt(mpk, f"decoy-{i}".encode(), b"msg", rng)
            ct = AibeirCiphertext(c1=honest.c1, c2=honest.c2, c3=other.c3)
        else:
            # flip one bit of the masked c0 at the tail of c2
            data = bytearray(honest.c2.to_bytes())
            data[-1 - rng.randrange(honest.c2.length)] ^= 1 << rng.randrange(8)
            ct = AibeirCiphertext(c1=honest.c1, c2=AnonCiphertext.from_bytes(bytes(data), mpk.params), c3=honest.c3)
        assert core.recover(mpk, irm, ct) is None
