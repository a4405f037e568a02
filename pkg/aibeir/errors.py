"""Exception hierarchy shared by every layer."""


class AibeirError(Exception):
    """Base class for all errors raised by this package."""


class ParamsError(AibeirError, ValueError):
    """Curve parameters are invalid or were requested with bad arguments."""


class SearchExhaustedError(ParamsError):
    """The deterministic parameter search ran out of candidates."""


class HashToGroupError(AibeirError):
    """Try-and-increment failed to land on a subgroup point."""


class EncodingError(AibeirError, ValueError):
    """A byte encoding could not be parsed."""


class FramingError(EncodingError):
    """Object header, object type or length prefixes are wrong."""


class MalformedLengthError(EncodingError):
    """An element encoding has the wrong length."""


class NotOnCurveError(EncodingError):
    """Decoded coordinates do not satisfy the curve equation."""


class NotInSubgroupError(EncodingError):
    """Decoded element lies outside the order-p subgroup."""


class IdentityLengthError(AibeirError, ValueError):
    """Bit identity length does not match the public key."""


class IdentityTooLongError(AibeirError, ValueError):
    """A byte identity exceeds 255 bytes."""


class MessageTooLongError(AibeirError, ValueError):
    """Message exceeds the byte-mode length bound."""


class ReservedIdentityError(AibeirError, ValueError):
    """The identity is reserved for the identity recovery manager."""


class MalformedC0Error(AibeirError):
    """The anonymous layer decrypted to something that is not a testable c0."""


class KeystoreError(AibeirError):
    """Keystore object missing or unreadable/unwritable."""


class ProtocolViolation(AibeirError):
    """An adversary broke a security game's query or challenge rules."""
