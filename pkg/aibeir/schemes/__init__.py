"""The two component schemes: an anonymous IBE and a testable IBE."""

from aibeir.schemes.anonymous import BonehFranklinIbe
from aibeir.schemes.protocols import IdentityBasedEncryption, TestableIdentityBasedEncryption
from aibeir.schemes.testable import BitIdentity, WatersIbe

__all__ = [
    "BitIdentity",
    "BonehFranklinIbe",
    "IdentityBasedEncryption",
    "TestableIdentityBasedEncryption",
    "WatersIbe",
]
