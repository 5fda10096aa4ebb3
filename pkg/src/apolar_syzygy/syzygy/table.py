"""Graded Betti tables and their serializations."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..apolar import PolyKind


@dataclass
class GradedBettiTable:
    """``beta[(i, j)]`` plus the set of columns ``i`` known to be complete."""

    kind: PolyKind
    n: int
    field: str
    entries: dict = field(default_factory=dict)
    complete_columns: set = field(default_factory=set)
    overflow: bool = False  # some block exceeded the budget; not serialized

    def __post_init__(self):
        self.kind = PolyKind.parse(self.kind)
        self.entries = {k: v for k, v in self.entries.items() if v}
        self.complete_columns = set(self.complete_columns)

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def __getitem__(self, ij) -> int:
        return self.beta(*ij)

    def set(self, i: int, j: int, value: int) -> None:
        if value < 0:
            raise ValueError("Betti numbers are non-negative")
        if value:
            self.entries[(i, j)] = value
        else:
            self.entries.pop((i, j), None)

    def is_complete(self, i: int) -> bool:
        return i in self.complete_columns

    @property
    def projective_dimension(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def column(self, i: int) -> dict:
        return {j: b for (ii, j), b in self.entries.items() if ii == i}

    def linear_strand(self) -> dict:
        """``{r: beta_{r,r+1}}`` for the computed entries of row 1."""
        return {i: b for (i, j), b in sorted(self.entries.items()) if j == i + 1}

    def sorted_entries(self):
        return sorted(self.entries.items())

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "kind": str(self.kind),
            "n": self.n,
            "field": self.field,
            "entries": [{"i": i, "j": j, "beta": b} for (i, j), b in self.sorted_entries()],
            "complete_columns": sorted(self.complete_columns),
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "GradedBettiTable":
        d = json.loads(text)
        entries = {(e["i"], e["j"]): e["beta"] for e in d["entries"]}
        return cls(d["kind"], d["n"], d["field"], entries, set(d["complete_columns"]))

    def to_csv(self) -> str:
        return "".join(f"{i},{j},{b}\n" for (i, j), b in self.sorted_entries())

    def to_ascii(self) -> str:
        """Row ``r`` column ``i`` shows ``beta_{i,i+r}``; zeros as '.', unknown as '?'."""
        if not self.entries:
            return "(empty)\n"
        cols = max(max(i for i, _ in self.entries), max(self.complete_columns, default=0))
        rows = max(j - i for i, j in self.entries)
        cells = [[""] + [str(i) for i in range(cols + 1)]]
        for r in range(rows + 1):
            line = [f"{r}:"]
            for i in range(cols + 1):
                b = self.beta(i, i + r)
                line.append(str(b) if b else ("." if self.is_complete(i) else "?"))
            cells.append(line)
        widths = [max(len(row[c]) for row in cells) for c in range(cols + 2)]
        out = []
        for row in cells:
            out.append(" ".join(s.rjust(w) for s, w in zip(row, widths)).rstrip())
        out.insert(1, "-" * len(out[0]))
        missing = [i for i in range(cols + 1) if not self.is_complete(i)]
        if missing:
            out.append("incomplete columns: " + ",".join(map(str, missing)))
        return "\n".join(out) + "\n"

    def serialize(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        if fmt == "table":
            return self.to_ascii()
        raise ValueError(f"unknown format {fmt!r}")


def serialize_table(t: GradedBettiTable, fmt: str) -> str:
    return t.serialize(fmt)
