"""Extendable-output hashing used as random oracles and mask generators."""

import hashlib

from aibeir.wire import pack_u16


def mask_stream(tag: bytes, *parts: bytes, length: int) -> bytes:
    """SHAKE-256 over a domain tag and length-prefixed parts."""
    xof = hashlib.shake_256(bytes([len(tag)]) + tag)
    for part in parts:
        xof.update(pack_u16(len(part)))
        xof.update(part)
    return xof.digest(length)


def xor_bytes(left: bytes, right: bytes) -> bytes:
    if len(left) != len(right):
        raise ValueError("xor operands differ in length")
    return bytes(a ^ b for a, b in zip(left, right))
