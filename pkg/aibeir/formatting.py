"""Output formatting for inspected objects, stored keys and estimates."""

from pathlib import Path

import click

from aibeir.errors import FramingError
from aibeir.games.models import AdvantageEstimate
from aibeir.pairing import CurveParams
from aibeir.wire import ObjectType, digest, read_header, split_fields

# objects whose first field, or whose first field's first field, is the curve parameters
_PARAMS_PATH = {
    ObjectType.PARAMS: (),
    ObjectType.TIBE_PUBLIC: (0,),
    ObjectType.ANON_PUBLIC: (0,),
    ObjectType.PUBLIC: (0, 0),
    ObjectType.USER: (0,),
}


def _params_digest(data: bytes, object_type: ObjectType) -> str | None:
    path = _PARAMS_PATH.get(object_type)
    if path is None:
        return None
    for index in path:
        data = split_fields(data)[index]
    return CurveParams.from_bytes(data).digest()


def describe_object(data: bytes) -> str:
    """One line of key=value pairs; secret objects show type and digests only."""
    header = read_header(data)
    parts = [f"type={header.name}", f"version={header.version}"]
    # the anonymous ciphertext body is fixed-layout, not length-prefixed fields
    fields = [] if header.object_type is ObjectType.ANON_CIPHERTEXT else split_fields(data)

    if header.secret:
        parts.append("secret=yes")
    elif header.object_type is ObjectType.CIPHERTEXT:
        if len(fields) != 3:
            raise FramingError(f"ciphertext has {len(fields)} segments, expected 3")
        parts += [f"{name}={len(field)}" for name, field in zip(("c1", "c2", "c3"), fields)]
    else:
        parts.append(f"size={len(data)}")
        if fields:
            parts.append("segments=" + ",".join(str(len(field)) for field in fields))
    params_digest = _params_digest(data, header.object_type)
    if params_digest:
        parts.append(f"params={params_digest}")
    if header.object_type is ObjectType.PUBLIC and len(fields) == 3:
        parts.append(f"irm-id={fields[2].decode('utf-8', errors='replace')}")
    parts.append(f"digest={digest(data)}")
    return " ".join(parts)


def print_object(data: bytes) -> None:
    click.echo(describe_object(data))


def print_stored(role: str, path: Path, data: bytes) -> None:
    """One line per keystore write: role, digest, file."""
    click.echo(f"{role} {digest(data)} {path}")


def print_estimate(estimate: AdvantageEstimate, verbose: bool = False) -> None:
    click.echo(estimate.to_line())
    if verbose:
        click.echo(f"  advantage={estimate.advantage:.6f} forfeits={estimate.forfeits}")
        if estimate.message_bit_wins is not None:
            click.echo(
                f"  message-bit wins={estimate.message_bit_wins} "
                f"identity-bit wins={estimate.identity_bit_wins}"
            )
