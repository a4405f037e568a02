import os
from pathlib import Path

CONFIG_DIR = Path.home() / ".config" / "aibeir"
DEFAULT_KEYSTORE = CONFIG_DIR / "keystore"
KEYSTORE_ENV = "AIBEIR_KEYSTORE"

SECRET_FILE_MODE = 0o600

# Subgroup sizes in bits. toy feeds the brute-force pairing oracle, desk the
# functional tests, demo the CLI.
SCALES = {"toy": 8, "desk": 64, "demo": 256}
MIN_SUBGROUP_BITS = 8

DEFAULT_IDENTITY_BITS = 128
DEFAULT_IRM_IDENTITY = "IRM"
MAX_IDENTITY_BYTES = 255

# Polynomial query bound of the security games, per phase.
DEFAULT_QUERY_CAP = 1 << 16


def ensure_config_dir():
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)


def keystore_root(override=None):
    """Resolve the keystore directory: explicit path, then env var, then default."""
    if override:
        return Path(override)
    env = os.environ.get(KEYSTORE_ENV)
    if env:
        return Path(env)
    ensure_config_dir()
    return DEFAULT_KEYSTORE


def restrict_permissions(path):
    """Limit a secret file to its owner."""
    os.chmod(path, SECRET_FILE_MODE)
