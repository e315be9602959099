"""Per-axiom verdicts shared by the validators."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    counterexample: Any = None
    detail: str = ""


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __iter__(self):
        return iter(self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {"name": c.name, "ok": c.ok,
                 "counterexample": _jsonable(c.counterexample), "detail": c.detail}
                for c in self.checks
            ],
        }


@dataclass(frozen=True)
class PropertyReport:
    """Verdict of a property checker with the data needed to replay it."""

    name: str
    holds: bool
    payload: dict[str, Any] = field(default_factory=dict)
    instance: str = ""

    def __bool__(self):
        return self.holds


def _jsonable(x):
    if isinstance(x, (tuple, list, frozenset, set)):
        items = sorted(x) if isinstance(x, (frozenset, set)) else x
        return [_jsonable(v) for v in items]
    return x


def first(items):
    """First element of an iterable, or None."""
    return next(iter(items), None)
