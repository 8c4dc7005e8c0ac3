"""Small structured pass/fail report shared by the checking operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    ok: bool
    checks: list = field(default_factory=list)  # (name, bool, detail)
    extras: dict = field(default_factory=dict)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))
        if not ok:
            self.ok = False

    def lines(self):
        out = []
        for name, ok, detail in self.checks:
            mark = "pass" if ok else "FAIL"
            out.append(f"{mark}  {name}" + (f"  [{detail}]" if detail else ""))
        return out
