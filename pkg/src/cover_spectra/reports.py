"""Pass/fail reports carrying witnesses for failed assertions."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, **witness) -> bool:
        self.checked += 1
        if not cond:
            self.failures.append(witness)
        return cond

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": [{k: _plain(v) for k, v in w.items()} for w in self.failures],
            **({"info": {k: _plain(v) for k, v in self.info.items()}} if self.info else {}),
        }


def _plain(v):
    if isinstance(v, (frozenset, set)):
        return sorted(map(str, v))
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (int, bool, str)) or v is None:
        return v
    return str(v)
