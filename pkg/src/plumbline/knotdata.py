"""Knot records with upper bounds on u, c4 and g4, and CSV ingestion."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path

HEADER = ["name", "u", "c4", "g4"]


@dataclass(frozen=True)
class KnotRecord:
    name: str
    u_upper: int | None = None
    c4_upper: int | None = None
    g4_upper: int | None = None
    source: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "u_upper": self.u_upper, "c4_upper": self.c4_upper,
                "g4_upper": self.g4_upper, "source": self.source}

    @classmethod
    def from_json(cls, data) -> "KnotRecord":
        return cls(data["name"], data["u_upper"], data["c4_upper"], data["g4_upper"], data["source"])


@dataclass(frozen=True)
class Bounds:
    u_upper: int | None
    c4_upper: int | None
    g4_upper: int | None
    slice_in_b4: bool
    derived: tuple[str, ...] = ()


def _min(*xs):
    xs = [x for x in xs if x is not None]
    return min(xs) if xs else None


def clasp_chain(k: KnotRecord) -> Bounds:
    """Push upper bounds down ``g4 <= c4 <= u``. Lower bounds are never made up."""
    if k.u_upper is None and k.c4_upper is None and k.g4_upper is None:
        raise ValueError(f"knot {k.name!r} carries no bounds")
    c4 = _min(k.c4_upper, k.u_upper)
    g4 = _min(k.g4_upper, c4)
    notes = []
    if c4 is not None and c4 != k.c4_upper:
        notes.append(f"c4 <= {c4} from u")
    if g4 is not None and g4 != k.g4_upper:
        notes.append(f"g4 <= {g4} from c4")
    return Bounds(k.u_upper, c4, g4, g4 == 0, tuple(notes))


def propagate(k: KnotRecord) -> KnotRecord:
    b = clasp_chain(k)
    return replace(k, c4_upper=b.c4_upper, g4_upper=b.g4_upper)


@dataclass
class Reject:
    row: int
    raw: list[str]
    reason: str


@dataclass
class KnotTable:
    records: list[KnotRecord] = field(default_factory=list)
    rejects: list[Reject] = field(default_factory=list)

    def __iter__(self):
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)


def _bound(text: str, col: str) -> int | None:
    text = text.strip()
    if not text:
        return None
    value = int(text)  # ValueError propagates as a reject
    if value < 0:
        raise ValueError(f"negative {col} bound {value}")
    return value


def load_knot_csv(path: str | Path) -> KnotTable:
    """Read ``name,u,c4,g4`` rows; blank cells mean unknown.

    Every data row ends up either as a record (with bounds propagated by
    :func:`clasp_chain`) or as a reject carrying the reason.
    """
    path = Path(path)
    table = KnotTable()
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected header {','.join(HEADER)}") from None
        if [h.strip() for h in header] != HEADER:
            raise ValueError(f"{path}: header {header} is not {','.join(HEADER)}")
        for rowno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                table.rejects.append(Reject(rowno, row, f"expected 4 columns, got {len(row)}"))
                continue
            name = row[0].strip()
            if not name:
                table.rejects.append(Reject(rowno, row, "missing name"))
                continue
            try:
                u, c4, g4 = (_bound(x, col) for x, col in zip(row[1:], HEADER[1:]))
                rec = propagate(KnotRecord(name, u, c4, g4, f"{path}:{rowno}"))
            except ValueError as exc:
                table.rejects.append(Reject(rowno, row, str(exc)))
                continue
            table.records.append(rec)
    return table
