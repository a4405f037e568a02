import random

import pytest

from aibeir.errors import FramingError, MessageTooLongError
from aibeir.pairing import pairing
from aibeir.schemes import BonehFranklinIbe, IdentityBasedEncryption
from aibeir.schemes.anonymous import (
    MAX_MESSAGE,
    AnonCiphertext,
    AnonMasterKey,
    AnonPublicKey,
    AnonUserKey,
    aibe_decrypt,
    aibe_encrypt,
    aibe_encrypt_with,
    aibe_extract,
    aibe_setup,
    aibe_verify_key,
    identity_point,
)


@pytest.fixture(scope="module")
def anon(desk_params):
    return aibe_setup(desk_params, random.Random(9))


def test_setup_relation(anon):
    pk, msk = anon
    assert pk.p_pub == pk.generator * msk.s
    assert msk.s != 0


def test_independent_setups_differ(desk_params):
    rng = random.Random(2)
    assert len({aibe_setup(desk_params, rng)[1].s for _ in range(100)}) == 100


def test_extract_is_deterministic_and_sane(anon):
    pk, msk = anon
    sk = aibe_extract(pk, msk, b"alice")
    assert sk == aibe_extract(pk, msk, b"alice")
    assert pairing(sk.d_id, pk.generator) == pairing(identity_point(b"alice", pk.params), pk.p_pub)
    assert aibe_verify_key(pk, b"alice", sk)
    assert not aibe_verify_key(pk, b"bob", sk)


def test_round_trip(anon, rng):
    pk, msk = anon
    sk = aibe_extract(pk, msk, b"alice")
    for size in (0, 1, 33, 500):
        msg = rng.randbytes(size)
        assert aibe_decrypt(pk, sk, aibe_encrypt(pk, b"alice", msg, rng)) == msg


def test_wrong_key_gives_same_length_garbage(anon, rng):
    pk, msk = anon
    msg = rng.randbytes(40)
    ct = aibe_encrypt(pk, b"alice", msg, rng)
    garbage = aibe_decrypt(pk, aibe_extract(pk, msk, b"bob"), ct)
    assert len(garbage) == len(msg)
    assert garbage != msg


def test_ciphertext_shape_ignores_identity(anon):
    pk, _ = anon
    a = aibe_encrypt_with(pk, b"alice", b"m" * 20, 1234)
    b = aibe_encrypt_with(pk, b"a much longer identity", b"m" * 20, 1234)
    assert a.u == b.u
    assert len(a.to_bytes()) == len(b.to_bytes())
    assert a.length == b.length == 20


def test_message_bound(anon, rng):
    pk, _ = anon
    with pytest.raises(MessageTooLongError):
        aibe_encrypt(pk, b"alice", bytes(MAX_MESSAGE + 1), rng)


def test_serialization(anon, desk_params, rng):
    pk, msk = anon
    assert AnonPublicKey.from_bytes(pk.to_bytes()) == pk
    assert AnonMasterKey.from_bytes(msk.to_bytes()) == msk
    sk = aibe_extract(pk, msk, b"alice")
    assert AnonUserKey.from_bytes(sk.to_bytes(), desk_params) == sk
    ct = aibe_encrypt(pk, b"alice", b"payload", rng)
    assert AnonCiphertext.from_bytes(ct.to_bytes(), desk_params) == ct


def test_truncated_ciphertext_rejected(anon, desk_params, rng):
    pk, _ = anon
    data = aibe_encrypt(pk, b"alice", b"payload", rng).to_bytes()
    with pytest.raises(FramingError):
        AnonCiphertext.from_bytes(data[:-1], desk_params)
    with pytest.raises(FramingError):
        AnonCiphertext.from_bytes(data + b"\x00", desk_params)


def test_mismatched_params_rejected(anon, toy_params, rng):
    pk, msk = anon
    other_pk, _ = aibe_setup(toy_params, rng)
    ct = aibe_encrypt(pk, b"alice", b"payload", rng)
    with pytest.raises(ValueError):
        aibe_decrypt(other_pk, aibe_extract(pk, msk, b"alice"), ct)


def test_adapter(desk_params, rng):
    scheme = BonehFranklinIbe()
    assert isinstance(scheme, IdentityBasedEncryption)
    pk, msk = scheme.setup(desk_params, rng)
    ct = scheme.encrypt(pk, b"carol", b"hi", rng)
    assert scheme.decrypt(pk, scheme.extract(pk, msk, b"carol", rng), ct) == b"hi"
    assert scheme.ciphertext_bytes(ct) == ct.to_bytes()


@pytest.mark.slow
def test_ciphertext_bytes_do_not_depend_on_identity(anon):
    pk, _ = anon
    rng = random.Random(31)
    msg = b"the same message for everyone"
    samples = {
        identity: [aibe_encrypt(pk, identity, msg, rng).to_bytes() for _ in range(500)]
        for identity in (b"alice", b"bob")
    }
    width = len(samples[b"alice"][0])
    assert all(len(data) == width for batch in samples.values() for data in batch)
    for position in range(width):
        means = [sum(data[position] for data in batch) / len(batch) for batch in samples.values()]
        assert abs(means[0] - means[1]) < 40
