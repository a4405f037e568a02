"""Curve parameters for the supersingular curve y^2 = x^3 + x over F_q."""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property

import gmpy2

from aibeir.config import MIN_SUBGROUP_BITS
from aibeir.errors import ParamsError, SearchExhaustedError
from aibeir.wire import FrameReader, FrameWriter, ObjectType, digest

log = logging.getLogger(__name__)

SEARCH_LIMIT = 100_000


@dataclass(frozen=True)
class CurveParams:
    """Group parameters: base field prime q, subgroup order p, cofactor (q+1)/p."""

    q: int
    p: int
    cofactor: int

    @property
    def field_width(self) -> int:
        return (self.q.bit_length() + 7) // 8

    @property
    def security_label(self) -> str:
        bits = self.p.bit_length()
        if bits < 32:
            return "toy"
        if bits <= 160:
            return "desk"
        return "demo"

    @cached_property
    def final_exponent(self) -> int:
        return (self.q * self.q - 1) // self.p

    @cached_property
    def sqrt_exponent(self) -> int:
        return (self.q + 1) // 4

    def validate(self) -> None:
        """Raise ParamsError unless every structural invariant holds."""
        if self.q % 4 != 3 or not gmpy2.is_prime(self.q):
            raise ParamsError("q must be a prime congruent to 3 mod 4")
        if self.p < 3 or not gmpy2.is_prime(self.p):
            raise ParamsError("p must be an odd prime")
        if self.cofactor * self.p != self.q + 1:
            raise ParamsError("cofactor * p must equal q + 1")
        if self.cofactor % self.p == 0:
            raise ParamsError("p must not divide the cofactor")

    def to_bytes(self) -> bytes:
        return (
            FrameWriter(ObjectType.PARAMS)
            .integer(self.q)
            .integer(self.p)
            .integer(self.cofactor)
            .to_bytes()
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> CurveParams:
        reader = FrameReader(data, ObjectType.PARAMS)
        params = cls(q=reader.integer(), p=reader.integer(), cofactor=reader.integer())
        reader.finish()
        params.validate()
        return params

    def digest(self) -> str:
        return digest(self.to_bytes())

    def __repr__(self) -> str:
        return (
            f"CurveParams({self.security_label}, p={self.p.bit_length()} bits, "
            f"q={self.q.bit_length()} bits)"
        )


def _candidates(seed: bytes, label: bytes, bits: int):
    """Deterministic odd integers of exactly `bits` bits derived from the seed."""
    width = (bits + 7) // 8
    for counter in range(SEARCH_LIMIT):
        material = hashlib.shake_256(label + seed + counter.to_bytes(4, "big")).digest(width)
        value = int.from_bytes(material, "big") >> (8 * width - bits)
        yield value | (1 << (bits - 1)) | 1


def generate_params(
    subgroup_bits: int, seed: bytes, *, field_bits: int | None = None
) -> CurveParams:
    """Search for (q, p) with p | q + 1, q = c*p - 1 prime and q = 3 mod 4.

    The search is a pure function of its arguments. Without `field_bits` the
    cofactor walks 4, 8, 12, ...; with it, cofactors of
    `field_bits - subgroup_bits` bits are drawn from the seed.
    """
    if subgroup_bits < MIN_SUBGROUP_BITS:
        raise ParamsError(f"subgroup_bits must be at least {MIN_SUBGROUP_BITS}")
    if field_bits is not None and field_bits < subgroup_bits + 8:
        raise ParamsError("field_bits must exceed subgroup_bits by at least 8")

    p = next((c for c in _candidates(seed, b"AIBE-P", subgroup_bits) if gmpy2.is_prime(c)), None)
    if p is None:
        raise SearchExhaustedError(f"no {subgroup_bits}-bit prime found")

    if field_bits is None:
        multipliers = range(1, SEARCH_LIMIT)
    else:
        # cofactor = 4 * k, so k has two bits fewer than the cofactor
        multipliers = _candidates(seed, b"AIBE-C", field_bits - subgroup_bits - 2)

    for tried, k in enumerate(multipliers, 1):
        cofactor = 4 * k
        if cofactor % p == 0:
            continue
        q = cofactor * p - 1
        if gmpy2.is_prime(q):
            log.debug("found q after %d cofactor candidates", tried)
            params = CurveParams(q=q, p=p, cofactor=cofactor)
            params.validate()
            return params
    raise SearchExhaustedError("no prime q found for this subgroup order")
