"""Pass/fail bookkeeping for identity sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq


@dataclass
class Report:
    """Outcome of one verification sweep; ``failures`` hold JSON-ready witnesses."""

    name: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, **witness) -> bool:
        self.checked += 1
        if not ok:
            self.failures.append({k: jsonable(v) for k, v in sorted(witness.items())})
        return ok

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked, "failures": self.failures}


def jsonable(v):
    if isinstance(v, mpq):
        return str(v)
    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return repr(v)
