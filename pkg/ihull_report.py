"""Reports: titled tables rendered as aligned text or as JSON.

Every command builds a ``Report``; ``--json`` selects ``to_json``. Cells hold
strings, numbers, booleans or lists of element names, and element sets are
always written as sorted name lists so output is byte-stable across runs.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Union

Cell = Union[str, int, bool, None, list]


def _text_cell(value: Cell) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return "{" + ",".join(str(v) for v in value) + "}"
    return str(value)


@dataclass
class Section:
    title: str
    columns: list[str]
    rows: list[list[Cell]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add_row(self, *cells: Cell) -> None:
        if len(cells) != len(self.columns):
            raise ValueError(
                f"section {self.title!r} expects {len(self.columns)} cells, got {len(cells)}"
            )
        self.rows.append(list(cells))

    def note(self, line: str) -> None:
        self.notes.append(line)

    def render(self) -> list[str]:
        lines = [f"== {self.title} =="]
        if self.columns:
            table = [self.columns] + [[_text_cell(c) for c in row] for row in self.rows]
            widths = [max(len(r[i]) for r in table) for i in range(len(self.columns))]
            for row in table:
                lines.append(
                    "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
                )
        lines.extend(self.notes)
        return lines


@dataclass
class Report:
    command: str
    subject: str
    sections: list[Section] = field(default_factory=list)
    status: str = "ok"

    def section(self, title: str, columns: Iterable[str] = ()) -> Section:
        sec = Section(title, list(columns))
        self.sections.append(sec)
        return sec

    def to_text(self) -> str:
        lines = [f"ihull {self.command}: {self.subject}"]
        for sec in self.sections:
            lines.append("")
            lines.extend(sec.render())
        if self.status != "ok":
            lines.append("")
            lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Report:
        return cls(
            command=data["command"],
            subject=data["subject"],
            sections=[Section(**sec) for sec in data["sections"]],
            status=data.get("status", "ok"),
        )

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))
