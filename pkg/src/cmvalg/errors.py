"""Exception types shared across the package."""


class CmvalgError(Exception):
    """Base class for all library errors."""


class MalformedTableError(CmvalgError):
    """An operation table has the wrong shape or an out-of-range index."""


class LawViolationError(CmvalgError):
    """An algebraic law failed on a concrete witness tuple.

    ``law`` is a short identifier (e.g. ``"MV1"``, ``"MONOID_ASSOC"``,
    ``"MODULE_IV"``); ``witness`` is the offending element tuple.
    """

    def __init__(self, law: str, witness: tuple, message: str = ""):
        self.law = law
        self.witness = witness
        text = f"{law} fails at witness {witness}"
        if message:
            text += f": {message}"
        super().__init__(text)


class SizeBoundError(CmvalgError):
    """A construction would exceed the configured size bound."""


class NotAnIdealError(CmvalgError):
    """A quotient or congruence was requested over a set that is not an ideal."""


class NotAHomomorphismError(CmvalgError):
    """A map claimed to be a homomorphism fails a preservation law."""


class PwlError(CmvalgError):
    """Invalid piecewise-linear data (slope, range, or endpoint problem)."""


class FormulaSyntaxError(CmvalgError):
    """Lexical or syntax error in formula/term/proof text, with position."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class InternalInvariantError(CmvalgError):
    """A consequence the theory guarantees failed; indicates a library bug."""
