"""Structured check results shared by the library and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactnum import Gaussian, Scalar
from .finstruct import canonical_key


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: Any = None, detail: str = "") -> Check:
        c = Check(name, bool(passed), witness, detail)
        self.checks.append(c)
        return c

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "verdict": "pass" if self.passed else "fail",
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    **({"witness": to_jsonable(c.witness)} if c.witness is not None else {}),
                    **({"detail": c.detail} if c.detail else {}),
                }
                for c in self.checks
            ],
            "data": to_jsonable(self.data),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.detail:
                line += f" - {c.detail}"
            lines.append(line)
            if c.witness is not None and not c.passed:
                lines.append(f"         witness: {json.dumps(to_jsonable(c.witness))}")
        for k, v in self.data.items():
            lines.append(f"  {k}: {json.dumps(to_jsonable(v))}")
        return "\n".join(lines)


def to_jsonable(x: Any) -> Any:
    """JSON-friendly form; sets are emitted in a fixed order."""
    from .monads import FormalSum  # local import avoids a cycle

    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, (Fraction, Gaussian)):
        return str(x)
    if isinstance(x, Scalar):
        return str(x)
    if isinstance(x, FormalSum):
        return [[to_jsonable(c), to_jsonable(k)] for k, c in x.sorted_items()]
    if isinstance(x, (frozenset, set)):
        return [to_jsonable(y) for y in sorted(x, key=canonical_key)]
    if isinstance(x, (list, tuple)):
        return [to_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {_key(k): to_jsonable(v) for k, v in x.items()}
    if hasattr(x, "to_dict"):
        return x.to_dict()
    return repr(x)


def _key(k: Any) -> str:
    from .finstruct import show

    return k if isinstance(k, str) else show(k)
