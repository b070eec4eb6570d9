"""Verdicts and the canonical JSON report format.

Reports are byte-stable: keys are sorted, separators fixed, and nothing
run-dependent (wall-clock timing, paths) enters the serialized form.
Timing is carried in memory for display on stderr only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidInput
from .hset import hset_key, is_atom

SCHEMA_VERSION = "1"

PASS = "PASS"
FAIL = "FAIL"
ABSENT = "ABSENT"
INCONCLUSIVE = "INCONCLUSIVE"
ERROR = "ERROR"

VERDICTS = (PASS, FAIL, ABSENT, INCONCLUSIVE, ERROR)

EXIT_CODES = {PASS: 0, ABSENT: 0, FAIL: 1, ERROR: 2, INCONCLUSIVE: 3}


@dataclass
class Report:
    """Outcome of one command: claim checked, verdict, and re-verifiable witnesses."""

    command: str
    claim: str
    verdict: str
    params: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    exactness: Optional[str] = None
    seed: int = 0
    timing_ms: Optional[float] = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise InvalidInput(f"unknown verdict {self.verdict!r}")

    def canonical_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "claim": self.claim,
            "verdict": self.verdict,
            "params": _jsonable(self.params),
            "witnesses": _jsonable(self.witnesses),
            "seed": self.seed,
        }
        if self.exactness is not None:
            out["exactness"] = self.exactness
        return out

    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]


def _jsonable(obj):
    """Deterministic JSON value: sets become sorted lists, dict keys strings."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        raise InvalidInput("reports carry exact values only; floats are not byte-stable")
    if isinstance(obj, frozenset):
        return [_jsonable(x) for x in sorted(obj, key=_set_elem_key)]
    if isinstance(obj, (list, tuple, set)):
        items = list(obj)
        if isinstance(obj, set):
            items.sort(key=repr)
        return [_jsonable(x) for x in items]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    raise InvalidInput(f"cannot serialize {type(obj).__name__} into a report")


def _set_elem_key(x):
    if is_atom(x) or isinstance(x, frozenset):
        return (0, hset_key(x))
    return (1, repr(x))


def canonical_json(report: Report) -> str:
    return json.dumps(report.canonical_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def emit_report(report: Report, path: Optional[str]) -> str:
    """Write the canonical bytes to ``path`` (or return them for stdout)."""
    text = canonical_json(report)
    if path is not None:
        try:
            with open(path, "w", encoding="ascii") as fh:
                fh.write(text)
        except OSError as exc:
            raise InvalidInput(f"cannot write report to {path}: {exc}") from exc
    return text


def load_report(path: str) -> dict:
    try:
        with open(path, encoding="ascii") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read report from {path}: {exc}") from exc
