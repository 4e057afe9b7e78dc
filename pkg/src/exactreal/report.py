"""Line-oriented pass/fail reports shared by every checker.

Each entry renders as ``LAW <name> PASS|FAIL [witness]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Entry:
    name: str
    passed: bool
    witness: str = ""
    checked: int = 0

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        parts = ["LAW", self.name, verdict]
        if self.witness:
            parts.append(self.witness)
        return " ".join(parts)


@dataclass
class Report:
    entries: list[Entry] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: str = "", checked: int = 0) -> Entry:
        entry = Entry(name, bool(passed), witness, checked)
        self.entries.append(entry)
        return entry

    def extend(self, other: "Report | Iterable[Entry]") -> "Report":
        self.entries.extend(other.entries if isinstance(other, Report) else other)
        return self

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list[Entry]:
        return [e for e in self.entries if not e.passed]

    def __getitem__(self, name: str) -> Entry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def lines(self) -> list[str]:
        return [e.line() for e in self.entries]

    def render(self) -> str:
        return "\n".join(self.lines())


class Tally:
    """Accumulates one law's outcome over many instances, keeping the first witness."""

    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failed = 0
        self.witness = ""

    def record(self, ok: bool, witness=None) -> None:
        self.checked += 1
        if not ok:
            self.failed += 1
            if not self.witness:
                self.witness = witness() if callable(witness) else str(witness or "")

    def into(self, report: Report, note: str = "") -> Entry:
        if self.failed:
            witness = f"{self.failed}/{self.checked} failed; first: {self.witness}"
        else:
            witness = f"n={self.checked}"
        if note:
            witness = f"{witness} {note}"
        return report.add(self.name, self.failed == 0, witness, self.checked)
