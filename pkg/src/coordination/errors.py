# src/coordination/errors.py


class CoordinationError(Exception):
    """Base class for every failure the package reports to callers."""


class ConfigError(CoordinationError):
    pass


class LexiconError(CoordinationError):
    """A lexicon file could not be loaded; carries the offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class UnknownTokenError(CoordinationError):
    def __init__(self, tokens):
        self.tokens = tuple(tokens)
        super().__init__("unknown token(s): " + ", ".join(self.tokens))


class ChartOverflowError(CoordinationError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"chart exceeded {limit} edges")


class CorpusError(CoordinationError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
