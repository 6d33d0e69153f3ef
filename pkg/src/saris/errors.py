"""Exception hierarchy shared across the package.

Every failure the service surfaces to callers derives from SarisError so the
API layer can map exception classes to HTTP statuses in one place.
"""


class SarisError(Exception):
    """Base class for all package errors."""

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    @property
    def code(self) -> str:
        return self.__class__.__name__


# domain

class UnknownLevel(SarisError):
    """Punishment seriousness label is not one of the known levels."""


# storage

class ValidationFailed(SarisError):
    """An entity violates one or more of its type invariants."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class IntegrityViolation(SarisError):
    """A stored reference would dangle, or a protected record would vanish."""


class DuplicateKey(SarisError):
    """A unique-key constraint would be broken."""


# workflow

class PermissionDenied(SarisError):
    """The actor's role is not granted the requested activity."""


class ScopeViolation(SarisError):
    """The actor's role allows the activity, but not on this record."""


class NotFound(SarisError):
    """The referenced record does not exist."""


class InvalidState(SarisError):
    """The operation is not legal in the record's current lifecycle state."""


class NoMatchingTeacher(SarisError):
    """Reviewer registration details match no teacher on file."""


class AlreadyRegistered(SarisError):
    """A reviewer account for this employee already exists."""


class DuplicateReview(SarisError):
    """The student already has a review for this academic year."""


# dataset

class BadHeader(SarisError):
    """Dataset CSV header does not match the canonical header."""


class BadField(SarisError):
    """Dataset CSV field failed strict parsing."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# classifier

class EmptySet(SarisError):
    """Entropy of an empty class distribution is undefined."""


class DegenerateSplit(SarisError):
    """The threshold leaves one side of the split empty."""


class EmptyTrainingSet(SarisError):
    """Cannot train on zero rows."""


class ArityMismatch(SarisError):
    """Feature vector length differs from the training arity."""


class BadFoldCount(SarisError):
    """Cross-validation fold count out of range."""


# api

class NoModel(SarisError):
    """Prediction requested before any model was trained."""
