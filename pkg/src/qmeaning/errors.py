"""Error types shared across the toolkit."""


class QMeaningError(ValueError):
    """Base class for toolkit errors."""


class CapacityError(QMeaningError):
    """An input exceeds what a register, code or solver can hold."""


class ZeroNormError(QMeaningError):
    """A projection left no amplitude (impossible post-selection)."""


class TaggedLineError(QMeaningError):
    """A pre-tagged corpus line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class TokenResolutionError(QMeaningError):
    """A test-pattern token is not present in the relevant basis."""

    def __init__(self, token: str, slot: str, candidates: list[str]):
        super().__init__(
            f"{slot} token {token!r} is not in the basis; candidates: {', '.join(candidates)}"
        )
        self.token = token
        self.slot = slot
        self.candidates = list(candidates)
