"""Binary framing shared by every serialized object.

Layout: magic "AIBE" | version | object type | marker | fields, where each
field is a u16 big-endian length followed by that many bytes. The marker is
0x53 ("S") for secret objects and 0x00 otherwise.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from enum import IntEnum

from aibeir.errors import FramingError

MAGIC = b"AIBE"
VERSION = 0x01
SECRET_MARKER = 0x53
PUBLIC_MARKER = 0x00
HEADER_LEN = len(MAGIC) + 3
U16_MAX = 0xFFFF


class ObjectType(IntEnum):
    PARAMS = 0x00
    TIBE_PUBLIC = 0x10
    TIBE_MASTER = 0x11
    TIBE_USER = 0x12
    TIBE_CIPHERTEXT = 0x13
    ANON_PUBLIC = 0x20
    ANON_MASTER = 0x21
    ANON_USER = 0x22
    ANON_CIPHERTEXT = 0x23
    CIPHERTEXT = 0x30
    PUBLIC = 0x31
    MASTER = 0x32
    USER = 0x33
    IRM = 0x34


SECRET_TYPES = frozenset(
    {
        ObjectType.TIBE_MASTER,
        ObjectType.TIBE_USER,
        ObjectType.ANON_MASTER,
        ObjectType.ANON_USER,
        ObjectType.MASTER,
        ObjectType.USER,
        ObjectType.IRM,
    }
)

# Short names used by the keystore and `inspect`.
OBJECT_NAMES = {
    ObjectType.PARAMS: "params",
    ObjectType.TIBE_PUBLIC: "tibe-pk",
    ObjectType.TIBE_MASTER: "tibe-msk",
    ObjectType.TIBE_USER: "tibe-key",
    ObjectType.TIBE_CIPHERTEXT: "tibe-ciphertext",
    ObjectType.ANON_PUBLIC: "anon-pk",
    ObjectType.ANON_MASTER: "anon-msk",
    ObjectType.ANON_USER: "anon-key",
    ObjectType.ANON_CIPHERTEXT: "anon-ciphertext",
    ObjectType.CIPHERTEXT: "ciphertext",
    ObjectType.PUBLIC: "mpk",
    ObjectType.MASTER: "msk",
    ObjectType.USER: "key",
    ObjectType.IRM: "irm",
}


def pack_u16(value: int) -> bytes:
    if not 0 <= value <= U16_MAX:
        raise FramingError(f"length {value} does not fit in u16")
    return struct.pack(">H", value)


def unpack_u16(data: bytes, offset: int = 0) -> int:
    if len(data) < offset + 2:
        raise FramingError("truncated u16 length")
    return struct.unpack_from(">H", data, offset)[0]


def int_to_bytes(value: int) -> bytes:
    """Minimal big-endian encoding, at least one byte."""
    return value.to_bytes(max(1, (value.bit_length() + 7) // 8), "big")


@dataclass(frozen=True)
class Header:
    object_type: ObjectType
    version: int
    secret: bool

    @property
    def name(self) -> str:
        return OBJECT_NAMES[self.object_type]


def read_header(data: bytes) -> Header:
    """Parse and validate the fixed-size header of a framed object."""
    if len(data) < HEADER_LEN:
        raise FramingError("truncated header")
    if data[: len(MAGIC)] != MAGIC:
        raise FramingError("bad magic")
    version, type_byte, marker = data[len(MAGIC)], data[len(MAGIC) + 1], data[len(MAGIC) + 2]
    if version != VERSION:
        raise FramingError(f"unsupported version {version:#04x}")
    try:
        object_type = ObjectType(type_byte)
    except ValueError:
        raise FramingError(f"unknown object type {type_byte:#04x}") from None
    if marker not in (SECRET_MARKER, PUBLIC_MARKER):
        raise FramingError(f"bad marker byte {marker:#04x}")
    secret = marker == SECRET_MARKER
    if secret != (object_type in SECRET_TYPES):
        raise FramingError("secret marker does not match object type")
    return Header(object_type=object_type, version=version, secret=secret)


class FrameWriter:
    """Accumulates length-prefixed fields behind an object header."""

    def __init__(self, object_type: ObjectType):
        marker = SECRET_MARKER if object_type in SECRET_TYPES else PUBLIC_MARKER
        self._parts = [MAGIC, bytes([VERSION, object_type, marker])]

    def field(self, data: bytes) -> FrameWriter:
        self._parts.append(pack_u16(len(data)))
        self._parts.append(bytes(data))
        return self

    def integer(self, value: int) -> FrameWriter:
        return self.field(int_to_bytes(value))

    def raw(self, data: bytes) -> FrameWriter:
        """Append bytes without a length prefix (for fixed-layout bodies)."""
        self._parts.append(bytes(data))
        return self

    def to_bytes(self) -> bytes:
        return b"".join(self._parts)


class FrameReader:
    """Reads fields back in order; `finish()` rejects trailing bytes."""

    def __init__(self, data: bytes, expected: ObjectType):
        self.header = read_header(data)
        if self.header.object_type != expected:
            raise FramingError(
                f"expected {OBJECT_NAMES[expected]}, got {self.header.name}"
            )
        self._data = bytes(data)
        self._offset = HEADER_LEN

    def field(self) -> bytes:
        length = unpack_u16(self._data, self._offset)
        start = self._offset + 2
        end = start + length
        if end > len(self._data):
            raise FramingError("field runs past end of data")
        self._offset = end
        return self._data[start:end]

    def integer(self) -> int:
        data = self.field()
        if not data:
            raise FramingError("empty integer field")
        return int.from_bytes(data, "big")

    def raw(self, length: int) -> bytes:
        end = self._offset + length
        if end > len(self._data):
            raise FramingError("body runs past end of data")
        chunk = self._data[self._offset : end]
        self._offset = end
        return chunk

    @property
    def remaining(self) -> int:
        return len(self._data) - self._offset

    def finish(self) -> None:
        if self.remaining:
            raise FramingError(f"{self.remaining} trailing bytes")


def split_fields(data: bytes) -> list[bytes]:
    """All length-prefixed fields after the header (used by `inspect`)."""
    fields = []
    offset = HEADER_LEN
    while offset < len(data):
        length = unpack_u16(data, offset)
        end = offset + 2 + length
        if end > len(data):
            raise FramingError("field runs past end of data")
        fields.append(data[offset + 2 : end])
        offset = end
    return fields


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()
