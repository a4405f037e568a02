import pytest

from aibeir.errors import FramingError
from aibeir.wire import (
    HEADER_LEN,
    FrameReader,
    FrameWriter,
    ObjectType,
    int_to_bytes,
    pack_u16,
    read_header,
    split_fields,
)


def test_writer_reader_agree():
    data = FrameWriter(ObjectType.PUBLIC).field(b"abc").integer(513).field(b"").to_bytes()
    reader = FrameReader(data, ObjectType.PUBLIC)
    assert reader.field() == b"abc"
    assert reader.integer() == 513
    assert reader.field() == b""
    reader.finish()


def test_header_marks_secrets():
    assert read_header(FrameWriter(ObjectType.IRM).to_bytes()).secret
    assert not read_header(FrameWriter(ObjectType.CIPHERTEXT).to_bytes()).secret
    assert read_header(FrameWriter(ObjectType.USER).to_bytes()).name == "key"


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: b"AIBX" + d[4:],
        lambda d: d[:4] + b"\x02" + d[5:],
        lambda d: d[:5] + b"\x7f" + d[6:],
        lambda d: d[:6] + b"\x01" + d[7:],
        lambda d: d[:6] + b"\x53" + d[7:],
        lambda d: d[:3],
    ],
    ids=["magic", "version", "type", "marker", "secret-mismatch", "truncated"],
)
def test_bad_headers(mutate):
    data = FrameWriter(ObjectType.CIPHERTEXT).field(b"x").to_bytes()
    with pytest.raises(FramingError):
        read_header(mutate(data))


def test_wrong_object_type():
    data = FrameWriter(ObjectType.PUBLIC).to_bytes()
    with pytest.raises(FramingError, match="expected ciphertext"):
        FrameReader(data, ObjectType.CIPHERTEXT)


def test_trailing_bytes_rejected():
    reader = FrameReader(FrameWriter(ObjectType.PUBLIC).field(b"a").to_bytes() + b"z", ObjectType.PUBLIC)
    reader.field()
    with pytest.raises(FramingError, match="trailing"):
        reader.finish()


def test_field_past_end():
    data = FrameWriter(ObjectType.PUBLIC).field(b"abcdef").to_bytes()
    with pytest.raises(FramingError):
        FrameReader(data[:-2], ObjectType.PUBLIC).field()


def test_empty_integer_rejected():
    with pytest.raises(FramingError):
        FrameReader(FrameWriter(ObjectType.PUBLIC).field(b"").to_bytes(), ObjectType.PUBLIC).integer()


def test_u16_bounds():
    assert pack_u16(0xFFFF) == b"\xff\xff"
    with pytest.raises(FramingError):
        pack_u16(0x10000)
    with pytest.raises(FramingError):
        FrameWriter(ObjectType.PUBLIC).field(bytes(0x10000))


def test_int_to_bytes_is_minimal():
    assert int_to_bytes(0) == b"\x00"
    assert int_to_bytes(255) == b"\xff"
    assert int_to_bytes(256) == b"\x01\x00"


def test_split_fields():
    data = FrameWriter(ObjectType.CIPHERTEXT).field(b"one").field(b"").field(b"three").to_bytes()
    assert split_fields(data) == [b"one", b"", b"three"]
    assert split_fields(data[:HEADER_LEN]) == []
    with pytest.raises(FramingError):
        split_fields(data[:-1])
