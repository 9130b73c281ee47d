"""Exception hierarchy shared by all reident modules."""

from __future__ import annotations


class ReidentError(Exception):
    """Base class for every error raised by this package."""


class RecordError(ReidentError, ValueError):
    """A dataset row failed validation.

    Carries the 1-based line number (when known) and the offending field so
    load reports can point at the exact cell.
    """

    def __init__(self, message: str, *, line_no: int | None = None, field: str | None = None):
        self.message = message
        self.line_no = line_no
        self.field = field
        super().__init__(str(self))

    def __str__(self) -> str:
        where = []
        if self.line_no is not None:
            where.append(f"line {self.line_no}")
        if self.field is not None:
            where.append(f"field {self.field}")
        prefix = ", ".join(where)
        return f"{prefix}: {self.message}" if prefix else self.message

    def at_line(self, line_no: int) -> "RecordError":
        self.line_no = line_no
        self.args = (str(self),)
        return self


class FieldCountError(RecordError):
    pass


class InvalidIdError(RecordError):
    pass


class InvalidDateError(RecordError):
    pass


class EmptyNameError(RecordError):
    pass


class InvalidGenderError(RecordError):
    pass


class InvalidAddressError(RecordError):
    pass


class UnderageError(RecordError):
    pass


class FutureBirthError(RecordError):
    pass


class DuplicateIdError(ReidentError, ValueError):
    def __init__(self, national_id: str, line_no: int | None = None):
        self.national_id = national_id
        self.line_no = line_no
        msg = f"duplicate national_id {national_id}"
        if line_no is not None:
            msg = f"line {line_no}: {msg}"
        super().__init__(msg)


class ConfigError(ReidentError, ValueError):
    pass


class LevelOutOfRange(ReidentError, ValueError):
    pass


class SpecError(ReidentError, ValueError):
    pass


class EmptySpecError(SpecError):
    pass


class UnknownToken(SpecError):
    pass


class DuplicateToken(SpecError):
    pass


class EmptyInputError(ReidentError, ValueError):
    pass


class NotFemaleError(ReidentError, ValueError):
    pass


class VictimNotFound(ReidentError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "victim not found"


class SampleTooLarge(ReidentError, ValueError):
    pass


class UnknownAreaCode(ReidentError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown area code"
