"""Shared result types for identity checks.

Every asserted identity carries a stable ``law`` identifier naming the
mathematical statement being checked, so reports are machine-readable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .exact import Exact


@dataclass(frozen=True)
class Assertion:
    law: str
    lhs: Exact
    rhs: Exact
    context: str = ""

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def describe(self) -> str:
        status = "pass" if self.passed else "FAIL"
        ctx = f" [{self.context}]" if self.context else ""
        return f"{status} {self.law}{ctx}: lhs = {self.lhs}, rhs = {self.rhs}"


@dataclass(frozen=True)
class CheckReport:
    title: str
    assertions: Tuple[Assertion, ...]
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def describe(self) -> str:
        lines = [self.title]
        lines.extend("  " + a.describe() for a in self.assertions)
        lines.extend("  note: " + n for n in self.notes)
        return "\n".join(lines)
