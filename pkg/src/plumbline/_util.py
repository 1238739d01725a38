"""Small shared helpers: verification reports and a union-find."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a verifier. Truthy iff no violations were found."""

    name: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, msg: str) -> None:
        self.violations.append(msg)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "violations": list(self.violations)}

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(data["name"], list(data["violations"]))

    def __str__(self) -> str:
        if self.ok:
            return f"{self.name}: pass"
        lines = [f"{self.name}: FAIL"] + [f"  - {v}" for v in self.violations]
        return "\n".join(lines)


class UnionFind:
    """Disjoint sets over arbitrary hashable items, with path halving."""

    def __init__(self, items=()):
        self.parent = {}
        self.n_sets = 0
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.n_sets += 1

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already joined."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.n_sets -= 1
        return True

    def groups(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())
