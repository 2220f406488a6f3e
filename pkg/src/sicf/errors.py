"""Exception types shared across the engine.

Plain argument misuse raises ValueError; these classes exist where callers
need to distinguish failure modes (CLI exit codes, degenerate-dialogue
handling, schema diagnostics).
"""


class SicfError(Exception):
    """Base class for engine errors."""


class CorpusSchemaError(SicfError):
    """A corpus/export record is malformed. Carries the offending line."""

    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{self.path}:{line_no}: {message}")


class CorpusValidationError(SicfError):
    """Records parse but violate a corpus invariant (e.g. duplicate id)."""


class EmptyCorpusError(SicfError):
    """The corpus file contains no records."""


class ExportLookupError(SicfError, KeyError):
    """A file-backed provider has no record for the requested key."""

    def __init__(self, store, key):
        self.store = store
        self.key = key
        super().__init__(f"{store} store has no record for key {key!r}")

    def __str__(self):
        # KeyError.__str__ would repr() the message tuple.
        return self.args[0]


class DegenerateCoverageError(SicfError):
    """The dialogue has no nouns, so coverage is undefined for it.

    Callers treat this as a signal, not a failure: the pipeline maps it to
    a zero coverage score plus a ``coverage-degenerate`` flag.
    """


class ConfigError(SicfError):
    """Run configuration is invalid. Carries the offending field."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"config field '{field}': {message}")


class InvariantViolation(SicfError):
    """An internal consistency check failed; indicates an engine bug."""
