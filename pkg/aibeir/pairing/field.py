"""F_q^2 = F_q[i]/(i^2 + 1) arithmetic; the pairing target group lives here."""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from aibeir.errors import EncodingError, MalformedLengthError, NotInSubgroupError
from aibeir.pairing.params import CurveParams


@dataclass(frozen=True, slots=True)
class GtElement:
    """re + im*i in F_q^2. Pairing outputs have order dividing p."""

    re: int
    im: int
    q: int

    @classmethod
    def one(cls, q: int) -> GtElement:
        return cls(1, 0, q)

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def norm(self) -> int:
        return (self.re * self.re + self.im * self.im) % self.q

    def conjugate(self) -> GtElement:
        return GtElement(self.re, -self.im % self.q, self.q)

    def inverse(self) -> GtElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse in F_q^2")
        inv = int(gmpy2.invert(n, self.q))
        return GtElement(self.re * inv % self.q, -self.im * inv % self.q, self.q)

    def __mul__(self, other: GtElement) -> GtElement:
        q = self.q
        a, b, c, d = self.re, self.im, other.re, other.im
        return GtElement((a * c - b * d) % q, (a * d + b * c) % q, q)

    def __truediv__(self, other: GtElement) -> GtElement:
        return self * other.inverse()

    def __pow__(self, exponent: int) -> GtElement:
        base = self
        if exponent < 0:
            base, exponent = self.inverse(), -exponent
        q = self.q
        rr, ri = 1, 0
        br, bi = base.re, base.im
        while exponent:
            if exponent & 1:
                rr, ri = (rr * br - ri * bi) % q, (rr * bi + ri * br) % q
            br, bi = (br * br - bi * bi) % q, (2 * br * bi) % q
            exponent >>= 1
        return GtElement(rr, ri, q)

    def has_order_dividing(self, p: int) -> bool:
        return (self**p).is_one()

    def __repr__(self) -> str:
        return f"GtElement({self.re:#x} + {self.im:#x}i)"


def serialize_gt(element: GtElement, params: CurveParams) -> bytes:
    """re || im, each big-endian and field_width bytes wide."""
    width = params.field_width
    return element.re.to_bytes(width, "big") + element.im.to_bytes(width, "big")


def deserialize_gt(data: bytes, params: CurveParams) -> GtElement:
    width = params.field_width
    if len(data) != 2 * width:
        raise MalformedLengthError(f"GT encoding must be {2 * width} bytes, got {len(data)}")
    re = int.from_bytes(data[:width], "big")
    im = int.from_bytes(data[width:], "big")
    if re >= params.q or im >= params.q:
        raise EncodingError("GT coordinate not reduced mod q")
    element = GtElement(re, im, params.q)
    if element.norm() == 0 or not element.has_order_dividing(params.p):
        raise NotInSubgroupError("GT element outside the order-p subgroup")
    return element
