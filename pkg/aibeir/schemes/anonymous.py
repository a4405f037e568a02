"""Boneh-Franklin style anonymous IBE over byte messages.

U = r*P, V = KDF(U, e(H1(id), P_pub)^r) xor msg. U is independent of the
identity and V is a fresh mask stream, so a ciphertext's length and layout
depend only on the message length.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from aibeir.errors import FramingError, MessageTooLongError
from aibeir.pairing import (
    CurveParams,
    GroupElement,
    GtElement,
    deserialize_g,
    encoded_point_len,
    hash_to_group,
    pairing,
    random_scalar,
    serialize_g,
    serialize_gt,
)
from aibeir.pairing.curve import INFINITY_BYTE
from aibeir.schemes.kdf import mask_stream, xor_bytes
from aibeir.wire import FrameReader, FrameWriter, ObjectType, U16_MAX, pack_u16, unpack_u16

log = logging.getLogger(__name__)

H1_TAG = b"AIBE-H1"
MASK_TAG = b"AIBE-MASK"
GENERATOR_LABEL = b"AIBE-GEN"
MAX_MESSAGE = U16_MAX


def identity_point(identity: bytes, params: CurveParams) -> GroupElement:
    """H1(id)."""
    return hash_to_group(H1_TAG, identity, params)


@dataclass(frozen=True)
class AnonPublicKey:
    params: CurveParams
    generator: GroupElement
    p_pub: GroupElement

    def to_bytes(self) -> bytes:
        return (
            FrameWriter(ObjectType.ANON_PUBLIC)
            .field(self.params.to_bytes())
            .field(serialize_g(self.generator))
            .field(serialize_g(self.p_pub))
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> AnonPublicKey:
        reader = FrameReader(data, ObjectType.ANON_PUBLIC)
        params = CurveParams.from_bytes(reader.field())
        generator = deserialize_g(reader.field(), params)
        p_pub = deserialize_g(reader.field(), params)
        reader.finish()
        if generator.is_identity:
            raise FramingError("anonymous IBE generator is the identity")
        return cls(params=params, generator=generator, p_pub=p_pub)


@dataclass(frozen=True)
class AnonMasterKey:
    s: int

    def to_bytes(self) -> bytes:
        return FrameWriter(ObjectType.ANON_MASTER).integer(self.s).to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> AnonMasterKey:
        reader = FrameReader(data, ObjectType.ANON_MASTER)
        key = cls(s=reader.integer())
        reader.finish()
        return key


@dataclass(frozen=True)
class AnonUserKey:
    d_id: GroupElement

    def to_bytes(self) -> bytes:
        return FrameWriter(ObjectType.ANON_USER).field(serialize_g(self.d_id)).to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes, params: CurveParams) -> AnonUserKey:
        reader = FrameReader(data, ObjectType.ANON_USER)
        key = cls(d_id=deserialize_g(reader.field(), params))
        reader.finish()
        return key


@dataclass(frozen=True)
class AnonCiphertext:
    u: GroupElement
    v: bytes

    @property
    def length(self) -> int:
        return len(self.v)

    def to_bytes(self) -> bytes:
        """Header, then serialize_g(U) || u16 length || V."""
        return (
            FrameWriter(ObjectType.ANON_CIPHERTEXT)
            .raw(serialize_g(self.u))
            .raw(pack_u16(len(self.v)))
            .raw(self.v)
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes, params: CurveParams) -> AnonCiphertext:
        reader = FrameReader(data, ObjectType.ANON_CIPHERTEXT)
        first = reader.raw(1)
        size = 1 if first[0] == INFINITY_BYTE else encoded_point_len(params)
        u = deserialize_g(first + reader.raw(size - 1), params)
        length = unpack_u16(reader.raw(2))
        v = reader.raw(length)
        reader.finish()
        return cls(u=u, v=v)


def _mask(u: GroupElement, shared: GtElement, params: CurveParams, length: int) -> bytes:
    return mask_stream(MASK_TAG, serialize_g(u), serialize_gt(shared, params), length=length)


def aibe_setup(params: CurveParams, rng: random.Random) -> tuple[AnonPublicKey, AnonMasterKey]:
    """s uniform and nonzero; P hashed from a fixed label; P_pub = s*P."""
    generator = hash_to_group(GENERATOR_LABEL, b"", params)
    s = random_scalar(params, rng, nonzero=True)
    log.debug("anonymous IBE setup")
    return AnonPublicKey(params=params, generator=generator, p_pub=generator * s), AnonMasterKey(s=s)


def aibe_extract(pk: AnonPublicKey, msk: AnonMasterKey, identity: bytes) -> AnonUserKey:
    """d_id = s*H1(id); deterministic."""
    return AnonUserKey(d_id=identity_point(identity, pk.params) * msk.s)


def aibe_verify_key(pk: AnonPublicKey, identity: bytes, sk: AnonUserKey) -> bool:
    """e(d_id, P) == e(H1(id), P_pub)."""
    return pairing(sk.d_id, pk.generator) == pairing(identity_point(identity, pk.params), pk.p_pub)


def aibe_encrypt_with(pk: AnonPublicKey, identity: bytes, msg: bytes, r: int) -> AnonCiphertext:
    if len(msg) > MAX_MESSAGE:
        raise MessageTooLongError(f"anonymous IBE message limited to {MAX_MESSAGE} bytes")
    r %= pk.params.p
    u = pk.generator * r
    shared = pairing(identity_point(identity, pk.params), pk.p_pub) ** r
    return AnonCiphertext(u=u, v=xor_bytes(_mask(u, shared, pk.params, len(msg)), msg))


def aibe_encrypt(pk: AnonPublicKey, identity: bytes, msg: bytes, rng: random.Random) -> AnonCiphertext:
    return aibe_encrypt_with(pk, identity, msg, random_scalar(pk.params, rng))


def aibe_decrypt(pk: AnonPublicKey | None, sk: AnonUserKey, ct: AnonCiphertext) -> bytes:
    """Unmask with e(d_id, U); a mismatched key gives garbage of the same length.

    Parameters come from the ciphertext; `pk`, when given, must agree with them.
    """
    params = ct.u.params
    if pk is not None and pk.params != params:
        raise ValueError("ciphertext and public key use different curve parameters")
    shared = pairing(sk.d_id, ct.u)
    return xor_bytes(_mask(ct.u, shared, params, len(ct.v)), ct.v)


class BonehFranklinIbe:
    """Implements IdentityBasedEncryption."""

    def setup(self, params: CurveParams, rng: random.Random) -> tuple[AnonPublicKey, AnonMasterKey]:
        return aibe_setup(params, rng)

    def extract(
        self, pk: AnonPublicKey, msk: AnonMasterKey, identity: bytes, rng: random.Random
    ) -> AnonUserKey:
        return aibe_extract(pk, msk, identity)

    def encrypt(self, pk: AnonPublicKey, identity: bytes, msg: bytes, rng: random.Random) -> AnonCiphertext:
        return aibe_encrypt(pk, identity, msg, rng)

    def decrypt(self, pk: AnonPublicKey, sk: AnonUserKey, ct: AnonCiphertext) -> bytes:
        return aibe_decrypt(pk, sk, ct)

    def ciphertext_bytes(self, ct: AnonCiphertext) -> bytes:
        return ct.to_bytes()
