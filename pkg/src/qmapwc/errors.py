"""Exception hierarchy shared by all modules.

Each class carries the CLI exit code it maps to.
"""

from __future__ import annotations


class QmapError(Exception):
    exit_code = 1


class ContextError(QmapError, ValueError):
    """Classes or series from different targets were combined."""

    exit_code = 3


class DomainError(QmapError, ValueError):
    exit_code = 3


class SingularError(DomainError):
    """Inverse requested for a non-invertible constant term."""


class DepthError(QmapError, ValueError):
    """An invariant table is too shallow for the requested output degree."""

    exit_code = 3


class UnresolvedBracketError(QmapError, LookupError):
    exit_code = 3

    def __init__(self, brackets):
        self.brackets = list(brackets)
        shown = ", ".join(str(b) for b in self.brackets[:5])
        super().__init__(f"no value source for {shown}")


class IntegralityError(QmapError, ArithmeticError):
    exit_code = 4


class IdentityCheckError(QmapError, AssertionError):
    exit_code = 4
