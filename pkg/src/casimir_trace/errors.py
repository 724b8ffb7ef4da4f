"""Error taxonomy shared across the package.

Four failure classes, kept distinct so the CLI can map them to exit codes:
bad parameter values (DomainError), queries beyond a series' guaranteed
order (PrecisionError), inputs outside an operation's contract
(UnsupportedInputError), and violated internal invariants (InvariantError).
"""


class DomainError(ValueError):
    """Parameter outside the documented domain (e.g. loops < 1)."""


class PrecisionError(ValueError):
    """Comparison or query past the order a series is valid to."""


class UnsupportedInputError(ValueError):
    """Structurally valid input the operation does not cover."""


class InvariantError(RuntimeError):
    """Internal consistency check failed; results would be untrustworthy."""


class ParseError(ValueError):
    """Malformed module expression; carries position and expectation."""

    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} (column {pos + 1} of {text!r})")
