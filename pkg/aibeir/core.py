"""Anonymous IBE with identity recovery.

A ciphertext is (c1, c2, c3):

    (c0, c1) = testable encryption of msg under id
    c2       = anonymous encryption of c0 under id
    c3       = testable encryption of id under the reserved identity id_epsilon

Users decrypt c2 to get c0 and then decrypt (c0, c1). The identity recovery
manager decrypts c3 to learn a candidate id, re-derives the anonymous key for
it, opens c2 and accepts only if the testable Test predicate holds on c0. The
manager never reads c1.
"""

from __future__ import annotations

import logging
import random
import secrets
from dataclasses import dataclass
from typing import Any

from aibeir.config import MAX_IDENTITY_BYTES
from aibeir.errors import (
    AibeirError,
    EncodingError,
    FramingError,
    IdentityTooLongError,
    MalformedC0Error,
    MessageTooLongError,
    ReservedIdentityError,
)
from aibeir.pairing import CurveParams, random_scalar
from aibeir.schemes.anonymous import (
    AnonCiphertext,
    AnonMasterKey,
    AnonPublicKey,
    AnonUserKey,
    aibe_decrypt,
    aibe_encrypt_with,
    aibe_extract,
    aibe_setup,
    aibe_verify_key,
)
from aibeir.schemes.testable import (
    MAX_BYTE_MESSAGE,
    BitIdentity,
    WatersCiphertext,
    WatersMasterKey,
    WatersPublicKey,
    WatersUserKey,
    decode_message_part,
    decode_test_part,
    encode_message_part,
    encode_test_part,
    tibe_decrypt,
    tibe_encrypt_with,
    tibe_extract,
    tibe_setup,
    tibe_test,
    tibe_verify_key,
)
from aibeir.wire import FrameReader, FrameWriter, ObjectType

log = logging.getLogger(__name__)

MAX_MESSAGE_BYTES = MAX_BYTE_MESSAGE


@dataclass(frozen=True)
class AibeirPublicKey:
    mpk_a: AnonPublicKey
    mpk_t: WatersPublicKey
    id_epsilon: bytes

    @property
    def params(self) -> CurveParams:
        return self.mpk_t.params

    @property
    def n(self) -> int:
        return self.mpk_t.n

    def bit_identity(self, identity: bytes) -> BitIdentity:
        return BitIdentity.from_identity(identity, self.n)

    def to_bytes(self) -> bytes:
        return (
            FrameWriter(ObjectType.PUBLIC)
            .field(self.mpk_a.to_bytes())
            .field(self.mpk_t.to_bytes())
            .field(self.id_epsilon)
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> AibeirPublicKey:
        reader = FrameReader(data, ObjectType.PUBLIC)
        mpk_a = AnonPublicKey.from_bytes(reader.field())
        mpk_t = WatersPublicKey.from_bytes(reader.field())
        id_epsilon = reader.field()
        reader.finish()
        if mpk_a.params != mpk_t.params:
            raise FramingError("public key halves use different curve parameters")
        if not id_epsilon:
            raise FramingError("empty reserved identity")
        return cls(mpk_a=mpk_a, mpk_t=mpk_t, id_epsilon=id_epsilon)


@dataclass(frozen=True)
class AibeirMasterKey:
    msk_a: AnonMasterKey
    msk_t: WatersMasterKey

    def to_bytes(self, include_alpha: bool = True) -> bytes:
        return (
            FrameWriter(ObjectType.MASTER)
            .field(self.msk_a.to_bytes())
            .field(self.msk_t.to_bytes(include_alpha=include_alpha))
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes, params: CurveParams) -> AibeirMasterKey:
        reader = FrameReader(data, ObjectType.MASTER)
        key = cls(
            msk_a=AnonMasterKey.from_bytes(reader.field()),
            msk_t=WatersMasterKey.from_bytes(reader.field(), params),
        )
        reader.finish()
        return key


@dataclass(frozen=True)
class IrmKey:
    """sk_IRM = (anonymous master key, testable key for id_epsilon)."""

    msk_a: AnonMasterKey
    sk_t_epsilon: WatersUserKey

    def to_bytes(self) -> bytes:
        return (
            FrameWriter(ObjectType.IRM)
            .field(self.msk_a.to_bytes())
            .field(self.sk_t_epsilon.to_bytes())
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes, params: CurveParams) -> IrmKey:
        reader = FrameReader(data, ObjectType.IRM)
        key = cls(
            msk_a=AnonMasterKey.from_bytes(reader.field()),
            sk_t_epsilon=WatersUserKey.from_bytes(reader.field(), params),
        )
        reader.finish()
        return key


@dataclass(frozen=True)
class AibeirUserKey:
    sk_a: AnonUserKey
    sk_t: WatersUserKey
    identity: bytes

    @property
    def params(self) -> CurveParams:
        return self.sk_a.d_id.params

    def to_bytes(self) -> bytes:
        """Curve parameters travel with the key so it decrypts on its own."""
        return (
            FrameWriter(ObjectType.USER)
            .field(self.params.to_bytes())
            .field(self.sk_a.to_bytes())
            .field(self.sk_t.to_bytes())
            .field(self.identity)
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> AibeirUserKey:
        reader = FrameReader(data, ObjectType.USER)
        params = CurveParams.from_bytes(reader.field())
        key = cls(
            sk_a=AnonUserKey.from_bytes(reader.field(), params),
            sk_t=WatersUserKey.from_bytes(reader.field(), params),
            identity=reader.field(),
        )
        reader.finish()
        return key


@dataclass(frozen=True)
class AibeirCiphertext:
    c1: bytes
    c2: AnonCiphertext
    c3: WatersCiphertext

    def to_bytes(self) -> bytes:
        return (
            FrameWriter(ObjectType.CIPHERTEXT)
            .field(encode_message_part(self.c1))
            .field(self.c2.to_bytes())
            .field(self.c3.to_bytes())
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes, params: CurveParams) -> AibeirCiphertext:
        reader = FrameReader(data, ObjectType.CIPHERTEXT)
        c1 = decode_message_part(reader.field())
        c2 = AnonCiphertext.from_bytes(reader.field(), params)
        c3 = WatersCiphertext.from_bytes(reader.field(), params)
        reader.finish()
        if not c3.byte_mode:
            raise FramingError("escrow part must be a byte-mode ciphertext")
        return cls(c1=c1, c2=c2, c3=c3)


@dataclass(frozen=True)
class EncryptionCoins:
    """The three independent randomness draws of one encryption."""

    t: int
    r: int
    t_escrow: int

    @classmethod
    def draw(cls, params: CurveParams, rng: random.Random) -> EncryptionCoins:
        return cls(
            t=random_scalar(params, rng),
            r=random_scalar(params, rng),
            t_escrow=random_scalar(params, rng),
        )


class FieldAccessRecorder:
    """Proxy over a ciphertext that logs which attributes were read."""

    def __init__(self, ciphertext: AibeirCiphertext):
        self._ciphertext = ciphertext
        self.accessed: list[str] = []

    def __getattr__(self, name: str) -> Any:
        self.accessed.append(name)
        return getattr(self._ciphertext, name)

    @property
    def touched_message_part(self) -> bool:
        return "c1" in self.accessed


def _check_identity(mpk: AibeirPublicKey, identity: bytes) -> None:
    if identity == mpk.id_epsilon:
        raise ReservedIdentityError("identity is reserved for the recovery manager")
    if len(identity) > MAX_IDENTITY_BYTES:
        raise IdentityTooLongError(f"identity longer than {MAX_IDENTITY_BYTES} bytes")


def setup(
    params: CurveParams, n: int, id_epsilon: bytes, rng: random.Random
) -> tuple[AibeirPublicKey, AibeirMasterKey, IrmKey]:
    """Run both component setups and hand the IRM its key as a separate value."""
    if not id_epsilon:
        raise ValueError("reserved identity must be non-empty")
    if len(id_epsilon) > MAX_IDENTITY_BYTES:
        raise IdentityTooLongError(f"reserved identity longer than {MAX_IDENTITY_BYTES} bytes")
    mpk_a, msk_a = aibe_setup(params, rng)
    mpk_t, msk_t = tibe_setup(params, n, rng)
    mpk = AibeirPublicKey(mpk_a=mpk_a, mpk_t=mpk_t, id_epsilon=id_epsilon)
    sk_t_epsilon = tibe_extract(mpk_t, msk_t, mpk.bit_identity(id_epsilon), rng)
    log.info("setup done: p has %d bits, n=%d", params.p.bit_length(), n)
    return mpk, AibeirMasterKey(msk_a=msk_a, msk_t=msk_t), IrmKey(msk_a=msk_a, sk_t_epsilon=sk_t_epsilon)


def extract(
    mpk: AibeirPublicKey,
    msk: AibeirMasterKey,
    identity: bytes,
    rng: random.Random | None = None,
) -> AibeirUserKey:
    """Both component keys for `identity`; never issued for id_epsilon."""
    _check_identity(mpk, identity)
    rng = rng or secrets.SystemRandom()
    return AibeirUserKey(
        sk_a=aibe_extract(mpk.mpk_a, msk.msk_a, identity),
        sk_t=tibe_extract(mpk.mpk_t, msk.msk_t, mpk.bit_identity(identity), rng),
        identity=identity,
    )


def verify_user_key(mpk: AibeirPublicKey, sk: AibeirUserKey) -> bool:
    return aibe_verify_key(mpk.mpk_a, sk.identity, sk.sk_a) and tibe_verify_key(
        mpk.mpk_t, mpk.bit_identity(sk.identity), sk.sk_t
    )


def encrypt_with_coins(
    mpk: AibeirPublicKey, identity: bytes, msg: bytes, coins: EncryptionCoins
) -> AibeirCiphertext:
    """Deterministic encryption; identical coins give byte-identical output."""
    _check_identity(mpk, identity)
    if len(msg) > MAX_MESSAGE_BYTES:
        raise MessageTooLongError(f"message limited to {MAX_MESSAGE_BYTES} bytes")
    inner = tibe_encrypt_with(mpk.mpk_t, mpk.bit_identity(identity), msg, coins.t)
    c2 = aibe_encrypt_with(mpk.mpk_a, identity, encode_test_part(inner.c0), coins.r)
    c3 = tibe_encrypt_with(mpk.mpk_t, mpk.bit_identity(mpk.id_epsilon), identity, coins.t_escrow)
    return AibeirCiphertext(c1=inner.c1, c2=c2, c3=c3)


def encrypt(mpk: AibeirPublicKey, identity: bytes, msg: bytes, rng: random.Random) -> AibeirCiphertext:
    return encrypt_with_coins(mpk, identity, msg, EncryptionCoins.draw(mpk.params, rng))


def decrypt(mpk: AibeirPublicKey | None, sk: AibeirUserKey, ct: AibeirCiphertext) -> bytes:
    """Open c2 to get c0, then decrypt (c0, c1). c3 is not used.

    Raises MalformedC0Error when the anonymous layer does not yield a valid c0,
    which is what a key for another identity almost always produces.
    """
    params = sk.params
    if mpk is not None and mpk.params != params:
        raise ValueError("user key and public key use different curve parameters")
    c0_bytes = aibe_decrypt(mpk.mpk_a if mpk else None, sk.sk_a, ct.c2)
    try:
        c0 = decode_test_part(c0_bytes, params)
    except EncodingError as exc:
        raise MalformedC0Error(f"anonymous layer did not yield a valid c0: {exc}") from exc
    return tibe_decrypt(mpk.mpk_t if mpk else None, sk.sk_t, WatersCiphertext(c0=c0, c1=ct.c1))


def recover(mpk: AibeirPublicKey, irm: IrmKey, ct: AibeirCiphertext) -> bytes | None:
    """The recipient identity, or None (bottom) for anything invalid.

    Reads only c3 and c2.
    """
    try:
        escrow = ct.c3
        if not escrow.byte_mode:
            return None
        identity = tibe_decrypt(mpk.mpk_t, irm.sk_t_epsilon, escrow)
        if identity == mpk.id_epsilon or len(identity) > MAX_IDENTITY_BYTES:
            return None
        sk_a = aibe_extract(mpk.mpk_a, irm.msk_a, identity)
        c0 = decode_test_part(aibe_decrypt(mpk.mpk_a, sk_a, ct.c2), mpk.params)
        if c0.c2.is_identity:
            return None
        if tibe_test(mpk.mpk_t, mpk.bit_identity(identity), c0):
            return identity
    except AibeirError as exc:
        log.debug("recover rejected ciphertext: %s", exc)
    return None


class AibeirScheme:
    """The composed scheme behind the generic IdentityBasedEncryption interface.

    `setup` drops the IRM key; callers that need it use the module-level `setup`.
    """

    def __init__(self, n: int, id_epsilon: bytes):
        self.n = n
        self.id_epsilon = id_epsilon

    def setup(self, params: CurveParams, rng: random.Random) -> tuple[AibeirPublicKey, AibeirMasterKey]:
        mpk, msk, _ = setup(params, self.n, self.id_epsilon, rng)
        return mpk, msk

    def extract(
        self, pk: AibeirPublicKey, msk: AibeirMasterKey, identity: bytes, rng: random.Random
    ) -> AibeirUserKey:
        return extract(pk, msk, identity, rng)

    def encrypt(self, pk: AibeirPublicKey, identity: bytes, msg: bytes, rng: random.Random) -> AibeirCiphertext:
        return encrypt(pk, identity, msg, rng)

    def decrypt(self, pk: AibeirPublicKey, sk: AibeirUserKey, ct: AibeirCiphertext) -> bytes:
        return decrypt(pk, sk, ct)

    def ciphertext_bytes(self, ct: AibeirCiphertext) -> bytes:
        return ct.to_bytes()
