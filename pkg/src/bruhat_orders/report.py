"""Machine-readable pass/fail reports for the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Assertion:
    assertion: str
    status: str  # "pass" | "fail"
    witness: object = None

    def to_json(self) -> dict:
        out = {"assertion": self.assertion, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    """An ordered list of named assertions plus free-form statistics."""

    suite: str
    entries: list[Assertion] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, assertion: str, ok: bool, witness=None) -> bool:
        self.entries.append(
            Assertion(assertion, "pass" if ok else "fail", None if ok else witness)
        )
        return ok

    def merge(self, other: "Report"):
        for entry in other.entries:
            self.entries.append(
                Assertion(f"{other.suite}: {entry.assertion}", entry.status, entry.witness)
            )
        for key, value in other.data.items():
            self.data[f"{other.suite}:{key}"] = value

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def failures(self) -> list[Assertion]:
        return [e for e in self.entries if e.status != "pass"]

    def to_json(self) -> dict:
        out = {
            "schema": "bruhat/1",
            "suite": self.suite,
            "ok": self.ok,
            "assertions": [e.to_json() for e in self.entries],
        }
        if self.data:
            out["data"] = self.data
        return out

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            mark = "PASS" if e.status == "pass" else "FAIL"
            suffix = "" if e.witness is None else f"  witness: {e.witness}"
            out.append(f"[{mark}] {self.suite}: {e.assertion}{suffix}")
        return out
