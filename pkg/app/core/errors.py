from __future__ import annotations


class ReciprocityError(Exception):
    pass


class InputError(ReciprocityError, ValueError):
    pass


class UsageError(ReciprocityError, ValueError):
    pass


class ZeroArgumentError(ReciprocityError, ValueError):
    pass


class UndefinedValuationError(ZeroArgumentError):
    pass


class InvalidModulusError(ReciprocityError, ValueError):
    pass


class LimitError(ReciprocityError, ValueError):
    def __init__(self, message: str, limit: int | None = None) -> None:
        super().__init__(message)
        self.limit = limit


class IncompatibleOrderError(ReciprocityError, ValueError):
    pass


class NonTransverseError(ReciprocityError, ValueError):
    pass


class OutOfDomainError(ReciprocityError, ValueError):
    pass


class NonCoprimeError(ReciprocityError, ValueError):
    pass


class StabilizationError(ReciprocityError, ArithmeticError):
    def __init__(self, message: str, level: int | None = None) -> None:
        super().__init__(message)
        self.level = level
