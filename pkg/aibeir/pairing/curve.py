"""Points of the order-p subgroup of E: y^2 = x^3 + x over F_q."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

import gmpy2

from aibeir.errors import (
    EncodingError,
    HashToGroupError,
    MalformedLengthError,
    NotInSubgroupError,
    NotOnCurveError,
)
from aibeir.pairing.params import CurveParams

INFINITY_BYTE = 0x00
AFFINE_BYTE = 0x04
HASH_ATTEMPTS = 1 << 16


@dataclass(frozen=True, slots=True)
class GroupElement:
    """Affine point, or the identity when x and y are None."""

    params: CurveParams
    x: int | None = None
    y: int | None = None

    @classmethod
    def identity(cls, params: CurveParams) -> GroupElement:
        return cls(params)

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def on_curve(self) -> bool:
        if self.is_identity:
            return True
        q = self.params.q
        return (self.y * self.y - self.x * self.x * self.x - self.x) % q == 0

    def in_subgroup(self) -> bool:
        return _multiply(self, self.params.p).is_identity

    def __neg__(self) -> GroupElement:
        if self.is_identity:
            return self
        return GroupElement(self.params, self.x, -self.y % self.params.q)

    def __add__(self, other: GroupElement) -> GroupElement:
        if self.is_identity:
            return other
        if other.is_identity:
            return self
        q = self.params.q
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if (y1 + y2) % q == 0:
                return GroupElement(self.params)
            lam = (3 * x1 * x1 + 1) * int(gmpy2.invert(2 * y1, q)) % q
        else:
            lam = (y2 - y1) * int(gmpy2.invert(x2 - x1, q)) % q
        x3 = (lam * lam - x1 - x2) % q
        y3 = (lam * (x1 - x3) - y1) % q
        return GroupElement(self.params, x3, y3)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        return point_mul(self, k)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if self.is_identity:
            return "GroupElement(O)"
        return f"GroupElement({self.x:#x}, {self.y:#x})"


def _multiply(point: GroupElement, k: int) -> GroupElement:
    """Double-and-add with no reduction of k (used for cofactor clearing)."""
    result = GroupElement(point.params)
    addend = point
    while k:
        if k & 1:
            result = result + addend
        addend = addend + addend
        k >>= 1
    return result


def point_mul(point: GroupElement, k: int) -> GroupElement:
    """k*P for P in the order-p subgroup; k is reduced mod p."""
    return _multiply(point, k % point.params.p)


def random_scalar(params: CurveParams, rng: random.Random, *, nonzero: bool = False) -> int:
    if nonzero:
        return 1 + rng.randrange(params.p - 1)
    return rng.randrange(params.p)


def _shake(tag: bytes, msg: bytes, counter: int, length: int) -> bytes:
    material = bytes([len(tag)]) + tag + msg + counter.to_bytes(4, "big")
    return hashlib.shake_256(material).digest(length)


def hash_to_group(tag: bytes, msg: bytes, params: CurveParams) -> GroupElement:
    """Try-and-increment onto the curve, then clear the cofactor.

    Never returns the identity.
    """
    if len(tag) > 255:
        raise ValueError("hash tag longer than 255 bytes")
    q = params.q
    # 16 extra bytes keep the reduction mod q close to uniform; one more picks the sign of y
    width = params.field_width + 16
    for counter in range(HASH_ATTEMPTS):
        material = _shake(tag, msg, counter, width + 1)
        x = int.from_bytes(material[:width], "big") % q
        rhs = (x * x * x + x) % q
        if rhs == 0:
            continue
        y = pow(rhs, params.sqrt_exponent, q)
        if y * y % q != rhs:
            continue
        if material[width] & 1:
            y = q - y
        point = _multiply(GroupElement(params, x, y), params.cofactor)
        if not point.is_identity:
            return point
    raise HashToGroupError(f"no subgroup point after {HASH_ATTEMPTS} attempts")


def fixed_base(params: CurveParams) -> GroupElement:
    """Public base point every scheme derives its random elements from."""
    return hash_to_group(b"AIBE-BASE", b"", params)


def serialize_g(point: GroupElement) -> bytes:
    """0x00 for the identity, else 0x04 || x || y at field_width bytes each."""
    if point.is_identity:
        return bytes([INFINITY_BYTE])
    width = point.params.field_width
    return bytes([AFFINE_BYTE]) + point.x.to_bytes(width, "big") + point.y.to_bytes(width, "big")


def encoded_point_len(params: CurveParams) -> int:
    return 1 + 2 * params.field_width


def deserialize_g(data: bytes, params: CurveParams) -> GroupElement:
    if len(data) == 1:
        if data[0] != INFINITY_BYTE:
            raise EncodingError(f"bad point marker {data[0]:#04x}")
        return GroupElement(params)
    width = params.field_width
    if len(data) != 1 + 2 * width:
        raise MalformedLengthError(f"point encoding must be {1 + 2 * width} bytes, got {len(data)}")
    if data[0] != AFFINE_BYTE:
        raise NotOnCurveError(f"bad point marker {data[0]:#04x}")
    x = int.from_bytes(data[1 : 1 + width], "big")
    y = int.from_bytes(data[1 + width :], "big")
    if x >= params.q or y >= params.q:
        raise NotOnCurveError("coordinate not reduced mod q")
    point = GroupElement(params, x, y)
    if not point.on_curve():
        raise NotOnCurveError("point does not satisfy y^2 = x^3 + x")
    if not point.in_subgroup():
        raise NotInSubgroupError("point outside the order-p subgroup")
    return point
