"""Exception hierarchy shared by the codec, embedders and CLI."""


class StegoError(Exception):
    """Base class for all package errors."""


class RangeError(StegoError, ValueError):
    """A pixel value does not fit the requested bit depth."""


class ValidityError(StegoError, ValueError):
    """A Zeckendorf word has two adjacent set bits."""


class RepresentationError(StegoError, ValueError):
    """A low-bit triplet is not a legal Zeckendorf pattern."""


class FormatError(StegoError, ValueError):
    """Malformed or truncated SISR stream / container / PGM file."""


class InputError(StegoError, ValueError):
    """Arguments violate an operation's precondition."""


class CapacityError(StegoError):
    """The cover cannot hold the requested number of bits."""

    def __init__(self, message, required=None, available=None):
        super().__init__(message)
        self.required = required
        self.available = available


class CorruptStegoError(StegoError):
    """Extracted length header is inconsistent with the stego capacity."""
