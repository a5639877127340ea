"""Non-fatal problems collected while loading, projecting and merging."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

# kinds that count as information loss or merge conflict under --strict
LOSS_KINDS = frozenset({"loss"})
CONFLICT_KINDS = frozenset({"conflict"})


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    source: Optional[str] = None
    entry: Optional[str] = None
    feature: Optional[str] = None
    values: Tuple[str, ...] = field(default_factory=tuple)

    def as_line(self) -> str:
        """One tab-separated record: kind, source, entry, feature, values, message."""
        cols = [
            self.kind,
            self.source or "-",
            self.entry or "-",
            self.feature or "-",
            " | ".join(self.values) if self.values else "-",
            self.message,
        ]
        return "\t".join(c.replace("\t", " ").replace("\n", " ") for c in cols)


def write_report(path, diagnostics: Iterable[Diagnostic], header: str) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fp:
        fp.write(f"# {header}\n")
        fp.write("# kind\tsource\tentry\tfeature\tvalues\tmessage\n")
        for d in diagnostics:
            fp.write(d.as_line() + "\n")
            n += 1
    return n
