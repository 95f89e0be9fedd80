from __future__ import annotations


class ZdqError(Exception):
    """Base error; ``exit_code`` is what the CLI exits with."""

    exit_code: int = 1


class UsageError(ZdqError, ValueError):
    exit_code = 2


class DomainError(ZdqError, ValueError):
    exit_code = 2


class ResourceError(ZdqError):
    exit_code = 3


class NumericError(ZdqError, ArithmeticError):
    exit_code = 4

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class VerificationError(ZdqError):
    exit_code = 1

    def __init__(self, message: str, counterexample: object | None = None):
        super().__init__(message)
        self.counterexample = counterexample


class ExportError(ZdqError):
    exit_code = 5
