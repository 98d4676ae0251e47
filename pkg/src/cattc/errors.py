"""Checker errors shared by the pasting, kernel and frontend layers."""

from __future__ import annotations

import enum
from typing import Optional


class ErrorKind(enum.Enum):
    UNKNOWN_VARIABLE = "UnknownVariable"
    DUPLICATE_VARIABLE = "DuplicateVariable"
    TYPE_MISMATCH = "TypeMismatch"
    NOT_A_PS_CONTEXT = "NotAPsContext"
    NOT_CONTRACTIBLE = "NotContractible"
    SIDE_CONDITION_SRC = "SideConditionSrc"
    SIDE_CONDITION_TGT = "SideConditionTgt"
    SIDE_CONDITION_FULL = "SideConditionFull"
    ARITY_MISMATCH = "ArityMismatch"
    UNKNOWN_COHERENCE = "UnknownCoherence"
    DUPLICATE_NAME = "DuplicateName"


class CheckError(Exception):
    """A failed judgment.  ``line``/``col`` are filled in by the frontend once
    the error is tied to a source declaration."""

    def __init__(
        self,
        kind: ErrorKind,
        message: str,
        line: Optional[int] = None,
        col: Optional[int] = None,
    ) -> None:
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.line = line
        self.col = col

    def at(self, line: int, col: int) -> "CheckError":
        """Attach a source position unless a more precise one is already set."""
        if self.line is None:
            self.line = line
            self.col = col
        return self

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.message}"


class ParseError(Exception):
    """A lexical or syntactic error, with a 1-based source position."""

    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def __str__(self) -> str:
        return f"syntax error: {self.message}"


def fmt_var_set(names) -> str:
    return "{" + ", ".join(sorted(names)) + "}"
