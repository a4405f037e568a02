import stat

import pytest

from aibeir.errors import KeystoreError
from aibeir.io_utils import read_file, write_file
from aibeir.keystore import Keystore
from aibeir.wire import digest


@pytest.fixture
def stored(tmp_path, deployment):
    mpk, msk, irm = deployment
    store = Keystore(tmp_path / "ks")
    store.save("mpk", mpk.to_bytes())
    store.save("msk", msk.to_bytes())
    store.save("irm", irm.to_bytes())
    return store


def test_objects_load_back(stored, deployment):
    mpk, msk, irm = deployment
    assert stored.public_key() == mpk
    assert stored.master_key() == msk
    assert stored.irm_key() == irm


def test_file_names_carry_digest(stored, deployment):
    mpk = deployment[0].to_bytes()
    assert stored.path_for("mpk").name == f"mpk.{digest(mpk)[:16]}.bin"


def test_secret_files_are_owner_only(stored):
    for role in ("msk", "irm"):
        assert stat.S_IMODE(stored.path_for(role).stat().st_mode) == 0o600


def test_save_replaces_older_object(stored):
    stored.save("mpk", b"replacement")
    files = list(stored.root.glob("mpk.*.bin"))
    assert len(files) == 1
    assert stored.load("mpk") == b"replacement"


def test_tampered_file_detected(stored):
    path = stored.path_for("irm")
    path.write_bytes(path.read_bytes() + b"\x00")
    with pytest.raises(KeystoreError, match="digest"):
        stored.load("irm")


def test_missing_objects(tmp_path):
    store = Keystore(tmp_path / "empty")
    assert not store.has("mpk")
    with pytest.raises(KeystoreError):
        store.public_key()


def test_unknown_role(tmp_path):
    with pytest.raises(KeystoreError):
        Keystore(tmp_path).save("notes", b"x")


def test_root_must_be_directory(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_bytes(b"")
    with pytest.raises(KeystoreError):
        Keystore(blocker).save("mpk", b"x")


def test_write_file_leaves_no_temporaries(tmp_path):
    target = write_file(tmp_path / "nested" / "out.bin", b"payload", secret=True)
    assert read_file(target) == b"payload"
    assert [p.name for p in target.parent.iterdir()] == ["out.bin"]


def test_read_missing_file(tmp_path):
    with pytest.raises(KeystoreError):
        read_file(tmp_path / "absent")
