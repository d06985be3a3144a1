"""Pass/fail reports produced by the functional-equation checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Cell:
    m: int
    i: int | None
    check: str
    passed: bool

    def to_json(self) -> dict:
        return {"m": self.m, "i": self.i, "check": self.check, "passed": self.passed}


@dataclass
class CheckReport:
    name: str
    cells: list[Cell] = field(default_factory=list)

    def add(self, m: int, i: int | None, check: str, passed: bool) -> None:
        self.cells.append(Cell(m, i, check, bool(passed)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    @property
    def failures(self) -> list[Cell]:
        return [c for c in self.cells if not c.passed]

    def failed_at(self, m: int, i: int | None, check: str | None = None) -> bool:
        return any(
            c.m == m and c.i == i and (check is None or c.check == check)
            for c in self.failures
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "n_cells": len(self.cells),
            "cells": [c.to_json() for c in self.cells],
        }
