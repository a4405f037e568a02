"""Symmetric pairing over the supersingular curve y^2 = x^3 + x."""

from aibeir.pairing.curve import (
    GroupElement,
    deserialize_g,
    encoded_point_len,
    fixed_base,
    hash_to_group,
    point_mul,
    random_scalar,
    serialize_g,
)
from aibeir.pairing.field import GtElement, deserialize_gt, serialize_gt
from aibeir.pairing.params import CurveParams, generate_params
from aibeir.pairing.tate import pairing

__all__ = [
    "CurveParams",
    "GroupElement",
    "GtElement",
    "deserialize_g",
    "deserialize_gt",
    "encoded_point_len",
    "fixed_base",
    "generate_params",
    "hash_to_group",
    "pairing",
    "point_mul",
    "random_scalar",
    "serialize_g",
    "serialize_gt",
]
