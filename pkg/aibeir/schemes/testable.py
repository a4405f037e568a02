"""Waters IBE with a public Test algorithm and a (c0, c1) ciphertext split.

c0 = (C2, C3) = (t*g, t*H(v)) carries the identity and nothing about the
message; c1 carries the message and nothing about the identity. Messages are
either GT elements (native mode) or byte strings masked with a KDF of
e(g1, g2)^t (byte mode). Test only ever looks at c0.
"""

from __future__ import annotations

import hashlib
import logging
import random
from dataclasses import dataclass
from functools import cached_property

from aibeir.config import DEFAULT_IDENTITY_BITS
from aibeir.errors import (
    EncodingError,
    FramingError,
    IdentityLengthError,
    MessageTooLongError,
    ParamsError,
)
from aibeir.pairing import (
    CurveParams,
    GroupElement,
    GtElement,
    deserialize_g,
    deserialize_gt,
    fixed_base,
    pairing,
    random_scalar,
    serialize_g,
    serialize_gt,
)
from aibeir.pairing.curve import AFFINE_BYTE, INFINITY_BYTE, encoded_point_len
from aibeir.schemes.kdf import mask_stream, xor_bytes
from aibeir.wire import (
    HEADER_LEN,
    U16_MAX,
    FrameReader,
    FrameWriter,
    ObjectType,
    int_to_bytes,
    pack_u16,
    unpack_u16,
)

log = logging.getLogger(__name__)

MASK_TAG = b"TIBE-MASK"
IDENTITY_TAG = b"TIBE-ID"
# byte-mode c1 travels as u16 length || mask inside a u16-prefixed field
MAX_BYTE_MESSAGE = U16_MAX - 2

NATIVE_MODE = 0x00
BYTE_MODE = 0x01


@dataclass(frozen=True)
class BitIdentity:
    """An n-bit identity string; bits[i - 1] is bit i, counting from 1."""

    bits: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def index_set(self) -> frozenset[int]:
        """1-based positions set to 1."""
        return frozenset(i for i, bit in enumerate(self.bits, 1) if bit)

    @classmethod
    def from_bits(cls, text: str) -> BitIdentity:
        if not text or set(text) - {"0", "1"}:
            raise ValueError("bit identity must be a non-empty string of 0/1")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_identity(cls, identity: bytes, n: int) -> BitIdentity:
        """Hash an arbitrary byte identity down to n bits.

        Distinct identities collide only when their SHAKE-256 prefixes agree
        on all n bits.
        """
        width = (n + 7) // 8
        value = int.from_bytes(hashlib.shake_256(IDENTITY_TAG + identity).digest(width), "big")
        value >>= 8 * width - n
        return cls(tuple((value >> (n - i)) & 1 for i in range(1, n + 1)))

    def __str__(self) -> str:
        return "".join(str(bit) for bit in self.bits)


@dataclass(frozen=True)
class WatersPublicKey:
    params: CurveParams
    g: GroupElement
    g1: GroupElement
    g2: GroupElement
    u_prime: GroupElement
    u_vec: tuple[GroupElement, ...]

    @property
    def n(self) -> int:
        return len(self.u_vec)

    @cached_property
    def egg(self) -> GtElement:
        """e(g1, g2), the message-blinding base."""
        return pairing(self.g1, self.g2)

    def to_bytes(self) -> bytes:
        writer = FrameWriter(ObjectType.TIBE_PUBLIC).field(self.params.to_bytes()).integer(self.n)
        for element in (self.g, self.g1, self.g2, self.u_prime, *self.u_vec):
            writer.field(serialize_g(element))
        return writer.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> WatersPublicKey:
        reader = FrameReader(data, ObjectType.TIBE_PUBLIC)
        params = CurveParams.from_bytes(reader.field())
        n = reader.integer()
        if n < 1:
            raise FramingError("identity length must be positive")
        g, g1, g2, u_prime = (deserialize_g(reader.field(), params) for _ in range(4))
        u_vec = tuple(deserialize_g(reader.field(), params) for _ in range(n))
        reader.finish()
        return cls(params=params, g=g, g1=g1, g2=g2, u_prime=u_prime, u_vec=u_vec)


@dataclass(frozen=True)
class WatersMasterKey:
    """g2^alpha. alpha is kept only so tests can check definitions."""

    g2_alpha: GroupElement
    alpha: int | None = None

    def to_bytes(self, include_alpha: bool = True) -> bytes:
        writer = FrameWriter(ObjectType.TIBE_MASTER).field(serialize_g(self.g2_alpha))
        if include_alpha and self.alpha is not None:
            writer.integer(self.alpha)
        return writer.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes, params: CurveParams) -> WatersMasterKey:
        reader = FrameReader(data, ObjectType.TIBE_MASTER)
        g2_alpha = deserialize_g(reader.field(), params)
        alpha = reader.integer() if reader.remaining else None
        reader.finish()
        return cls(g2_alpha=g2_alpha, alpha=alpha)


@dataclass(frozen=True)
class WatersUserKey:
    d1: GroupElement
    d2: GroupElement

    def to_bytes(self) -> bytes:
        return (
            FrameWriter(ObjectType.TIBE_USER)
            .field(serialize_g(self.d1))
            .field(serialize_g(self.d2))
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes, params: CurveParams) -> WatersUserKey:
        reader = FrameReader(data, ObjectType.TIBE_USER)
        key = cls(d1=deserialize_g(reader.field(), params), d2=deserialize_g(reader.field(), params))
        reader.finish()
        return key


@dataclass(frozen=True)
class IdentityPart:
    """c0 = (C2, C3): everything Test needs, nothing about the message."""

    c2: GroupElement
    c3: GroupElement

    def to_bytes(self) -> bytes:
        return encode_test_part(self)


@dataclass(frozen=True)
class WatersCiphertext:
    c0: IdentityPart
    c1: GtElement | bytes

    @property
    def byte_mode(self) -> bool:
        return isinstance(self.c1, bytes)

    def to_bytes(self) -> bytes:
        params = self.c0.c2.params
        if self.byte_mode:
            mode, body = BYTE_MODE, encode_message_part(self.c1)
        else:
            mode, body = NATIVE_MODE, serialize_gt(self.c1, params)
        return (
            FrameWriter(ObjectType.TIBE_CIPHERTEXT)
            .field(bytes([mode]))
            .field(serialize_g(self.c0.c2))
            .field(serialize_g(self.c0.c3))
            .field(body)
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes, params: CurveParams) -> WatersCiphertext:
        reader = FrameReader(data, ObjectType.TIBE_CIPHERTEXT)
        mode = reader.field()
        if mode not in (bytes([NATIVE_MODE]), bytes([BYTE_MODE])):
            raise FramingError("unknown ciphertext mode")
        c0 = IdentityPart(deserialize_g(reader.field(), params), deserialize_g(reader.field(), params))
        body = reader.field()
        reader.finish()
        if mode[0] == BYTE_MODE:
            return cls(c0=c0, c1=decode_message_part(body))
        return cls(c0=c0, c1=deserialize_gt(body, params))


def encode_message_part(masked: bytes) -> bytes:
    """Byte-mode c1 wire form: u16 length || mask bytes."""
    return pack_u16(len(masked)) + masked


def decode_message_part(data: bytes) -> bytes:
    length = unpack_u16(data)
    if len(data) != 2 + length:
        raise FramingError("byte-mode c1 length does not match its prefix")
    return data[2:]


def encode_test_part(c0: IdentityPart) -> bytes:
    """serialize_g(C2) || serialize_g(C3)."""
    return serialize_g(c0.c2) + serialize_g(c0.c3)


def decode_test_part(data: bytes, params: CurveParams) -> IdentityPart:
    """Inverse of encode_test_part; raises EncodingError on anything else."""
    points = []
    offset = 0
    for _ in range(2):
        if offset >= len(data):
            raise EncodingError("c0 truncated")
        if data[offset] == INFINITY_BYTE:
            size = 1
        elif data[offset] == AFFINE_BYTE:
            size = encoded_point_len(params)
        else:
            raise EncodingError(f"bad point marker {data[offset]:#04x} in c0")
        points.append(deserialize_g(data[offset : offset + size], params))
        offset += size
    if offset != len(data):
        raise EncodingError("trailing bytes after c0")
    return IdentityPart(points[0], points[1])


def _check_identity(pk: WatersPublicKey, v: BitIdentity) -> None:
    if v.n != pk.n:
        raise IdentityLengthError(f"identity has {v.n} bits, public key expects {pk.n}")


def message_mask(key: GtElement, params: CurveParams, length: int) -> bytes:
    return mask_stream(MASK_TAG, serialize_gt(key, params), length=length)


def public_key_size(params: CurveParams, n: int) -> int:
    """Serialized size of a public key with identity length n."""
    fields = (
        len(params.to_bytes()),
        len(int_to_bytes(n)),
        *(encoded_point_len(params) for _ in range(4 + n)),
    )
    return HEADER_LEN + sum(2 + size for size in fields)


def tibe_setup(
    params: CurveParams, n: int, rng: random.Random
) -> tuple[WatersPublicKey, WatersMasterKey]:
    """Random g, g2, u', U; alpha uniform; g1 = alpha*g; master key alpha*g2."""
    if n < 1:
        raise ValueError("identity length n must be at least 1")
    if public_key_size(params, n) > U16_MAX:
        raise ParamsError(f"identity length n={n} makes the public key too large to frame at these parameters")
    base = fixed_base(params)
    g = base * random_scalar(params, rng, nonzero=True)
    g2 = base * random_scalar(params, rng, nonzero=True)
    u_prime = base * random_scalar(params, rng)
    u_vec = tuple(base * random_scalar(params, rng) for _ in range(n))
    alpha = random_scalar(params, rng)
    pk = WatersPublicKey(params=params, g=g, g1=g * alpha, g2=g2, u_prime=u_prime, u_vec=u_vec)
    log.debug("testable IBE setup with n=%d", n)
    return pk, WatersMasterKey(g2_alpha=g2 * alpha, alpha=alpha)


def hash_product(pk: WatersPublicKey, v: BitIdentity) -> GroupElement:
    """u' + sum of u_i over the positions where v has a 1."""
    _check_identity(pk, v)
    total = pk.u_prime
    for i in sorted(v.index_set):
        total = total + pk.u_vec[i - 1]
    return total


def tibe_extract_with(
    pk: WatersPublicKey, msk: WatersMasterKey, v: BitIdentity, r: int
) -> WatersUserKey:
    return WatersUserKey(d1=msk.g2_alpha + hash_product(pk, v) * r, d2=pk.g * r)


def tibe_extract(
    pk: WatersPublicKey, msk: WatersMasterKey, v: BitIdentity, rng: random.Random
) -> WatersUserKey:
    """d_v = (g2^alpha * H(v)^r, g^r) for a fresh r."""
    return tibe_extract_with(pk, msk, v, random_scalar(pk.params, rng))


def tibe_verify_key(pk: WatersPublicKey, v: BitIdentity, sk: WatersUserKey) -> bool:
    """e(d1, g) == e(g1, g2) * e(H(v), d2)."""
    return pairing(sk.d1, pk.g) == pk.egg * pairing(hash_product(pk, v), sk.d2)


def tibe_encrypt_with(
    pk: WatersPublicKey, v: BitIdentity, msg: GtElement | bytes, t: int
) -> WatersCiphertext:
    """Encrypt with explicit coins t; c0 depends only on (pk, v, t)."""
    h = hash_product(pk, v)
    t %= pk.params.p
    c0 = IdentityPart(c2=pk.g * t, c3=h * t)
    blind = pk.egg**t
    if isinstance(msg, GtElement):
        return WatersCiphertext(c0=c0, c1=blind * msg)
    if len(msg) > MAX_BYTE_MESSAGE:
        raise MessageTooLongError(f"byte-mode message limited to {MAX_BYTE_MESSAGE} bytes")
    return WatersCiphertext(c0=c0, c1=xor_bytes(message_mask(blind, pk.params, len(msg)), msg))


def tibe_encrypt(
    pk: WatersPublicKey, v: BitIdentity, msg: GtElement | bytes, rng: random.Random
) -> WatersCiphertext:
    return tibe_encrypt_with(pk, v, msg, random_scalar(pk.params, rng))


def tibe_decrypt(
    pk: WatersPublicKey | None, sk: WatersUserKey, ct: WatersCiphertext
) -> GtElement | bytes:
    """C1 * e(d2, C3) / e(d1, C2); a key for another identity yields garbage.

    Parameters come from the ciphertext; `pk`, when given, must agree with them.
    """
    c2, c3 = ct.c0.c2, ct.c0.c3
    if pk is not None and pk.params != c2.params:
        raise ValueError("ciphertext and public key use different curve parameters")
    if ct.byte_mode:
        blind = pairing(sk.d1, c2) / pairing(sk.d2, c3)
        return xor_bytes(message_mask(blind, c2.params, len(ct.c1)), ct.c1)
    return ct.c1 * pairing(sk.d2, c3) / pairing(sk.d1, c2)


def tibe_test(pk: WatersPublicKey, v: BitIdentity, c0: IdentityPart) -> bool:
    """e(g, C3) == e(C2, H(v)). Public: no secret input."""
    return pairing(pk.g, c0.c3) == pairing(c0.c2, hash_product(pk, v))


class WatersIbe:
    """Byte-identity, byte-message view of the testable scheme.

    Implements TestableIdentityBasedEncryption.
    """

    def __init__(self, n: int = DEFAULT_IDENTITY_BITS):
        self.n = n

    def setup(self, params: CurveParams, rng: random.Random) -> tuple[WatersPublicKey, WatersMasterKey]:
        return tibe_setup(params, self.n, rng)

    def extract(
        self, pk: WatersPublicKey, msk: WatersMasterKey, identity: bytes, rng: random.Random
    ) -> WatersUserKey:
        return tibe_extract(pk, msk, BitIdentity.from_identity(identity, pk.n), rng)

    def encrypt(
        self, pk: WatersPublicKey, identity: bytes, msg: bytes, rng: random.Random
    ) -> WatersCiphertext:
        return tibe_encrypt(pk, BitIdentity.from_identity(identity, pk.n), msg, rng)

    def decrypt(self, pk: WatersPublicKey, sk: WatersUserKey, ct: WatersCiphertext) -> bytes:
        return tibe_decrypt(pk, sk, ct)

    def test(self, pk: WatersPublicKey, identity: bytes, ct: WatersCiphertext) -> bool:
        return tibe_test(pk, BitIdentity.from_identity(identity, pk.n), ct.c0)

    def ciphertext_bytes(self, ct: WatersCiphertext) -> bytes:
        return ct.to_bytes()
