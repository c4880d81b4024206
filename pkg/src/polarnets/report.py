"""Structured, deterministic reports for the command line."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactalg import Mod, Poly

SCHEMA_VERSION = 1


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    prime: int | None = None
    results: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    wall_time: float = 0.0

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self, timing: bool = False) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "inputs": jsonable(self.inputs),
            "seed": self.seed,
            "prime": self.prime,
            "results": jsonable(self.results),
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "ok": self.ok,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing), indent=2)

    def to_text(self, timing: bool = False) -> str:
        lines = [f"== {self.command} =="]
        lines.append(f"seed: {self.seed}" + (f"   prime: {self.prime}" if self.prime else ""))
        for k, v in jsonable(self.inputs).items():
            lines.append(f"input {k}: {_short(v)}")
        for k, v in jsonable(self.results).items():
            _text_lines(lines, k, v, 0)
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}" + (f" -- {c.detail}" if c.detail else ""))
        lines.append("result: " + ("ok" if self.ok else "FAILED"))
        if timing:
            lines.append(f"wall time: {self.wall_time:.3f}s")
        return "\n".join(lines)


def _short(v) -> str:
    return v if isinstance(v, str) else json.dumps(v)


def _text_lines(lines: list[str], key: str, value, depth: int) -> None:
    pad = "  " * depth
    if isinstance(value, dict):
        lines.append(f"{pad}{key}:")
        for k, v in value.items():
            _text_lines(lines, str(k), v, depth + 1)
    elif isinstance(value, list) and value and all(isinstance(x, (dict, list)) for x in value):
        lines.append(f"{pad}{key}:")
        for i, v in enumerate(value):
            _text_lines(lines, f"[{i}]", v, depth + 1)
    else:
        lines.append(f"{pad}{key}: {_short(value)}")


def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (Poly, Mod)):
        return str(x)
    return str(x)


class Timer:
    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_time = time.perf_counter() - self.t0
        return False
