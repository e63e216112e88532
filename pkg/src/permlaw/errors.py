"""Exception types shared across the toolkit.

Every resource limit is a typed error: computations never degrade
silently when a cap is hit.
"""


class PermlawError(Exception):
    """Base class for all toolkit errors."""


class InvalidPermutation(PermlawError, ValueError):
    """An image sequence that is not a bijection on {0..degree-1}."""


class DegreeMismatch(PermlawError, ValueError):
    """Permutations or groups of different degrees were combined."""


class CapExceeded(PermlawError):
    """A configured resource cap would be exceeded.

    Attributes carry the cap name, its limit, and the size that was
    actually required, so callers can report or retry with raised caps.
    """

    def __init__(self, cap: str, limit: int, required: int | None = None, detail: str = ""):
        self.cap = cap
        self.limit = limit
        self.required = required
        msg = f"cap {cap}={limit} exceeded"
        if required is not None:
            msg += f" (required {required})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NoApplicablePath(PermlawError):
    """Neither the small (enumeration) path nor a certificate path applies."""


class NotAMember(PermlawError, ValueError):
    """An element was required to lie in a group but does not."""


class NotASubgroup(PermlawError, ValueError):
    """A purported subgroup has a generator outside the ambient group."""


class WordSyntaxError(PermlawError, ValueError):
    """A word string does not follow the `x<i>` / `x<i>^-1` syntax."""


class GroupFileError(PermlawError, ValueError):
    """A group file is malformed; message names the offending field."""


class CertificateError(PermlawError):
    """A structure or trajectory certificate failed re-verification."""
