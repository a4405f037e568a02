"""Symmetric pairing: reduced Tate pairing composed with the distortion map.

e(P, Q) = t(P, phi(Q)) ** ((q^2 - 1) / p) with phi(x, y) = (-x, i*y).
phi(Q) has x in F_q, so every vertical line is an F_q value and vanishes under
the final exponentiation; the Miller loop only accumulates line numerators.
"""

from __future__ import annotations

import gmpy2

from aibeir.pairing.curve import GroupElement
from aibeir.pairing.field import GtElement
from aibeir.pairing.params import CurveParams


def _miller(P: GroupElement, Q: GroupElement) -> tuple[int, int]:
    """f_{p,P} evaluated at phi(Q), as (re, im) over F_q."""
    params = P.params
    q = params.q
    px, py = P.x, P.y
    # phi(Q) = (-xq, i*yq); a line y - ty - lam*(x - tx) evaluated there is
    # (lam*(xq + tx) - ty) + yq*i
    xq, yq = Q.x, Q.y
    tx, ty = px, py
    fr, fi = 1, 0
    for bit in bin(params.p)[3:]:
        lam = (3 * tx * tx + 1) * int(gmpy2.invert(2 * ty, q)) % q
        lr = (lam * (xq + tx) - ty) % q
        fr, fi = (fr * fr - fi * fi) % q, (2 * fr * fi) % q
        fr, fi = (fr * lr - fi * yq) % q, (fr * yq + fi * lr) % q
        nx = (lam * lam - 2 * tx) % q
        ty = (lam * (tx - nx) - ty) % q
        tx = nx
        if bit == "1":
            if tx == px and (ty + py) % q == 0:
                # T + P = O: the vertical line is eliminated; only happens on the last bit
                tx = ty = None
                continue
            lam = (py - ty) * int(gmpy2.invert(px - tx, q)) % q
            lr = (lam * (xq + tx) - ty) % q
            fr, fi = (fr * lr - fi * yq) % q, (fr * yq + fi * lr) % q
            nx = (lam * lam - tx - px) % q
            ty = (lam * (tx - nx) - ty) % q
            tx = nx
    return fr, fi


def final_exponentiation(f: GtElement, params: CurveParams) -> GtElement:
    """f ** ((q^2 - 1)/p), split as (q - 1) via Frobenius then the cofactor."""
    # f^q is the conjugate, so f^(q-1) = conj(f) / f
    g = f.conjugate() * f.inverse()
    return g**params.cofactor


def pairing(P: GroupElement, Q: GroupElement) -> GtElement:
    """Bilinear, symmetric, non-degenerate on the order-p subgroup."""
    params = P.params
    if P.is_identity or Q.is_identity:
        return GtElement.one(params.q)
    fr, fi = _miller(P, Q)
    return final_exponentiation(GtElement(fr, fi, params.q), params)
