"""Deterministic key-value reports.

A ReportDocument is an insertion-ordered map of sections, each an
insertion-ordered map of keys to values.  The kv rendering emits one
"section.key = value" line per entry with numbers at 12 significant
digits; rerunning a computation with identical inputs reproduces the
bytes exactly (nothing here depends on time, environment or hashing
order).  The text rendering shows the same data as aligned per-section
tables.
"""

from __future__ import annotations

import re

from .errors import DomainError

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "%.12g" % value
    if isinstance(value, complex):
        if value.imag == 0.0:
            return "%.12g" % value.real
        return "%.12g%+.12gi" % (value.real, value.imag)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    raise DomainError(f"cannot render value of type {type(value).__name__}")


class ReportDocument:
    def __init__(self):
        self._sections: dict[str, dict[str, object]] = {}

    def add(self, section: str, key: str, value) -> None:
        if not _IDENTIFIER.match(section):
            raise DomainError(f"bad section name {section!r}")
        if not _IDENTIFIER.match(key):
            raise DomainError(f"bad key name {key!r}")
        self._sections.setdefault(section, {})[key] = value

    def items(self):
        for section, entries in self._sections.items():
            for key, value in entries.items():
                yield section, key, value

    def render_kv(self) -> str:
        lines = [f"{section}.{key} = {format_value(value)}" for section, key, value in self.items()]
        return "\n".join(lines) + "\n"

    def render_text(self) -> str:
        blocks = []
        for section, entries in self._sections.items():
            width = max(len(k) for k in entries)
            rows = [f"  {key.ljust(width)}  {format_value(value)}" for key, value in entries.items()]
            blocks.append(f"[{section}]\n" + "\n".join(rows))
        return "\n\n".join(blocks) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "kv":
            return self.render_kv()
        if fmt == "text":
            return self.render_text()
        raise DomainError(f"unknown report format {fmt!r}")
