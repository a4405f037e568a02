"""Click-based CLI commands."""

import functools
import logging
import os
import random
import secrets
import sys
from pathlib import Path

import click

from aibeir import core
from aibeir.config import (
    DEFAULT_IDENTITY_BITS,
    DEFAULT_IRM_IDENTITY,
    KEYSTORE_ENV,
    MAX_IDENTITY_BYTES,
    MIN_SUBGROUP_BITS,
    SCALES,
    keystore_root,
)
from aibeir.core import AibeirCiphertext, AibeirUserKey
from aibeir.errors import (
    AibeirError,
    EncodingError,
    FramingError,
    IdentityTooLongError,
    KeystoreError,
    MalformedC0Error,
    MessageTooLongError,
    ParamsError,
    ReservedIdentityError,
)
from aibeir.formatting import print_estimate, print_object, print_stored
from aibeir.games import GameKind, GameSettings, estimate_advantage
from aibeir.games.adversaries import ADVERSARIES
from aibeir.games.challenger import MIN_TRIALS
from aibeir.io_utils import read_file, write_file
from aibeir.keystore import Keystore
from aibeir.pairing import generate_params
from aibeir.wire import ObjectType, read_header

EXIT_USAGE = 1
EXIT_CRYPTO = 2
EXIT_IO = 3

BOTTOM = "BOTTOM"


class CommandError(click.ClickException):
    """A failure with an explicit exit code from the CLI contract."""

    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def exit_code_for(exc: Exception) -> int:
    if isinstance(exc, (ReservedIdentityError, MalformedC0Error)):
        return EXIT_CRYPTO
    if isinstance(exc, (KeystoreError, EncodingError)):
        return EXIT_IO
    if isinstance(exc, (MessageTooLongError, IdentityTooLongError, ParamsError)):
        return EXIT_USAGE
    if isinstance(exc, AibeirError):
        return EXIT_CRYPTO
    return EXIT_USAGE


def translate_errors(func):
    """Map library exceptions onto the exit-code contract."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (AibeirError, ValueError) as exc:
            raise CommandError(str(exc), exit_code_for(exc)) from exc

    return wrapper


class AibeirGroup(click.Group):
    """Usage errors exit with 1 instead of click's default 2."""

    def main(self, *args, **kwargs):
        kwargs["standalone_mode"] = False
        try:
            return super().main(*args, **kwargs)
        except click.UsageError as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(exc.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)


def parse_seed(seed: str | None) -> bytes | None:
    if seed is None:
        return None
    try:
        value = bytes.fromhex(seed)
    except ValueError:
        raise click.BadParameter("seed must be hex", param_hint="--seed") from None
    if not value:
        raise click.BadParameter("seed must not be empty", param_hint="--seed")
    return value


def randomness(seed: bytes | None) -> tuple[bytes, random.Random]:
    """Parameter-search seed and rng: reproducible when seeded, system randomness otherwise."""
    if seed is None:
        return os.urandom(32), secrets.SystemRandom()
    return seed, random.Random(seed)


def encode_identity(value: str, option: str) -> bytes:
    identity = value.encode("utf-8")
    if not identity:
        raise click.BadParameter("identity must not be empty", param_hint=option)
    if len(identity) > MAX_IDENTITY_BYTES:
        raise click.BadParameter(f"identity longer than {MAX_IDENTITY_BYTES} bytes", param_hint=option)
    return identity


keystore_option = click.option(
    "--keystore",
    envvar=KEYSTORE_ENV,
    type=click.Path(path_type=Path),
    help="Keystore directory (default: $AIBEIR_KEYSTORE or ~/.config/aibeir/keystore)",
)


@click.group(cls=AibeirGroup, invoke_without_command=True)
@click.option("--verbose", "-v", is_flag=True, help="Log library activity to stderr")
@click.pass_context
def cli(ctx, verbose):
    """AIBEIR - anonymous identity-based encryption with identity recovery."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, stream=sys.stderr)
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


@cli.command("setup")
@click.option("--bits", type=click.IntRange(min=MIN_SUBGROUP_BITS), default=SCALES["demo"], show_default=True,
              help="Subgroup order size in bits")
@click.option("--n-bits", "n_bits", type=click.IntRange(min=1), default=DEFAULT_IDENTITY_BITS, show_default=True,
              help="Identity length of the testable scheme")
@click.option("--irm-id", default=DEFAULT_IRM_IDENTITY, show_default=True, help="Reserved recovery identity")
@keystore_option
@click.option("--seed", help="Hex seed for reproducible parameters and keys")
@click.option("--split-irm", type=click.Path(path_type=Path), help="Write the IRM key to this directory instead")
@translate_errors
def setup_cmd(bits, n_bits, irm_id, keystore, seed, split_irm):
    """Generate parameters and the public, master and IRM keys."""
    id_epsilon = encode_identity(irm_id, "--irm-id")
    params_seed, rng = randomness(parse_seed(seed))
    params = generate_params(bits, params_seed)
    mpk, msk, irm = core.setup(params, n_bits, id_epsilon, rng)

    store = Keystore(keystore_root(keystore))
    irm_store = Keystore(split_irm) if split_irm else store
    objects = [
        (store, "mpk", mpk.to_bytes()),
        (store, "msk", msk.to_bytes(include_alpha=False)),
        (irm_store, "irm", irm.to_bytes()),
    ]
    if split_irm:
        # the IRM needs the public key next to its own key
        objects.append((irm_store, "mpk", mpk.to_bytes()))
    for target, role, data in objects:
        print_stored(role, target.save(role, data), data)


@cli.command("extract")
@click.option("--id", "identity", required=True, help="Identity to issue a key for")
@keystore_option
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path), help="User key file to write")
@translate_errors
def extract_cmd(identity, keystore, out_path):
    """Issue a user key."""
    store = Keystore(keystore_root(keystore))
    if not store.has("msk"):
        raise CommandError(f"keystore {store.root} holds no master key", EXIT_IO)
    mpk, msk = store.public_key(), store.master_key()
    key = core.extract(mpk, msk, encode_identity(identity, "--id"), secrets.SystemRandom())
    data = key.to_bytes()
    print_stored("key", write_file(out_path, data, secret=True), data)


@cli.command("encrypt")
@click.option("--id", "identity", required=True, help="Recipient identity")
@click.option("--in", "in_path", required=True, type=click.Path(path_type=Path), help="Plaintext file")
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path), help="Ciphertext file to write")
@keystore_option
@translate_errors
def encrypt_cmd(identity, in_path, out_path, keystore):
    """Encrypt a file to an identity."""
    mpk = Keystore(keystore_root(keystore)).public_key()
    msg = read_file(in_path)
    ct = core.encrypt(mpk, encode_identity(identity, "--id"), msg, secrets.SystemRandom())
    write_file(out_path, ct.to_bytes())


@cli.command("decrypt")
@click.option("--key", "key_path", required=True, type=click.Path(path_type=Path), help="User key file")
@click.option("--in", "in_path", required=True, type=click.Path(path_type=Path), help="Ciphertext file")
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path), help="Plaintext file to write")
@translate_errors
def decrypt_cmd(key_path, in_path, out_path):
    """Decrypt a ciphertext with a user key."""
    key = AibeirUserKey.from_bytes(read_file(key_path))
    ct = AibeirCiphertext.from_bytes(read_file(in_path), key.params)
    write_file(out_path, core.decrypt(None, key, ct))


@cli.command("recover")
@click.option("--in", "in_path", required=True, type=click.Path(path_type=Path), help="Ciphertext file")
@keystore_option
@translate_errors
def recover_cmd(in_path, keystore):
    """Print the recipient identity of a ciphertext, or BOTTOM."""
    store = Keystore(keystore_root(keystore))
    mpk, irm = store.public_key(), store.irm_key()
    data = read_file(in_path)
    header = read_header(data)
    if header.object_type is not ObjectType.CIPHERTEXT:
        raise CommandError(f"expected a ciphertext, got {header.name}", EXIT_IO)
    try:
        ct = AibeirCiphertext.from_bytes(data, mpk.params)
    except FramingError:
        raise
    except EncodingError:
        # well framed, but an element does not decode
        ct = None
    identity = None if ct is None else core.recover(mpk, irm, ct)
    if identity is None:
        click.echo(BOTTOM)
        raise CommandError("no valid recipient identity", EXIT_CRYPTO)
    click.echo(identity.decode("utf-8", errors="replace"))


@cli.command("inspect")
@click.option("--in", "in_path", required=True, type=click.Path(path_type=Path), help="Object file")
@translate_errors
def inspect_cmd(in_path):
    """Describe a framed object without revealing secrets."""
    print_object(read_file(in_path))


@cli.command("estimate")
@click.option("--game", type=click.Choice([kind.value for kind in GameKind]), required=True)
@click.option("--adversary", type=click.Choice(sorted(ADVERSARIES)), required=True)
@click.option("--trials", type=click.IntRange(min=MIN_TRIALS), default=1000, show_default=True)
@click.option("--bits", type=click.IntRange(min=MIN_SUBGROUP_BITS), default=SCALES["desk"], show_default=True)
@click.option("--n-bits", "n_bits", type=click.IntRange(min=1), default=DEFAULT_IDENTITY_BITS, show_default=True)
@click.option("--seed", help="Hex seed for a reproducible run")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--hand-master-key", is_flag=True, help="Give the master key to adversaries that accept it")
@click.option("--transcript", "transcript_path", type=click.Path(path_type=Path),
              help="Write the last game transcript here")
@click.pass_context
@translate_errors
def estimate_cmd(ctx, game, adversary, trials, bits, n_bits, seed, workers, hand_master_key, transcript_path):
    """Estimate an adversary's win rate in a security game."""
    kind = GameKind(game)
    adversary_cls, games = ADVERSARIES[adversary]
    if kind not in games:
        raise click.BadParameter(f"{adversary} does not play the {game} game", param_hint="--adversary")
    params_seed, rng = randomness(parse_seed(seed))
    params = generate_params(bits, params_seed)
    settings = GameSettings(n=n_bits, hand_master_key=hand_master_key)
    estimate = estimate_advantage(adversary_cls, kind, trials, params, rng, settings=settings, workers=workers)
    print_estimate(estimate, verbose=ctx.obj.get("verbose", False))
    if transcript_path:
        lines = estimate.last_transcript.to_lines()
        write_file(transcript_path, "".join(f"{line}\n" for line in lines).encode())


def main():
    """Entry point for the CLI."""
    cli()
