"""Versioned JSON instance files.

Every rational is a string ``"p"`` or ``"p/q"`` so no binary float ever
touches a file. Example::

    {
      "version": 1,
      "kind": "omac_additive",
      "label": "three equal agents",
      "family": {},
      "agents": [{"id": 1, "cost": "1/4"}, ...],
      "weights": ["1", "1", "1"]
    }

``omac_xos`` files carry ``"clauses"`` (a list of weight lists) instead of
``"weights"``; ``oks`` files carry ``"budget"`` and
``"items": [{"id": 1, "value": "2", "cost": "1/2"}, ...]``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .exact import format_rational, parse_rational
from .model import Agent, Instance, InstanceError, RewardFunction
from .oks import OksInstance, OksItem

__all__ = [
    "FORMAT_VERSION",
    "KINDS",
    "SchemaError",
    "instance_to_dict",
    "dumps_instance",
    "loads_instance",
    "save_instance",
    "load_instance",
]

FORMAT_VERSION = 1
KINDS = ("omac_additive", "omac_xos", "oks")

AnyInstance = Union[Instance, OksInstance]


class SchemaError(ValueError):
    """A file that does not match the instance schema."""

    def __init__(self, message: str, line: int | None = None, source: str = "<string>"):
        where = f"{source}:{line}: " if line else f"{source}: "
        super().__init__(where + message)
        self.line = line


def instance_to_dict(obj: AnyInstance) -> dict:
    if isinstance(obj, OksInstance):
        return {
            "version": FORMAT_VERSION,
            "kind": "oks",
            "label": obj.label,
            "budget": format_rational(obj.budget),
            "items": [
                {"id": it.id + 1, "value": format_rational(it.value), "cost": format_rational(it.cost)}
                for it in obj.items
            ],
        }
    out = {
        "version": FORMAT_VERSION,
        "kind": "omac_additive" if obj.is_additive else "omac_xos",
        "label": obj.label,
        "family": {str(k): str(v) for k, v in sorted(obj.family.items())},
        "agents": [{"id": a.id + 1, "cost": format_rational(a.cost)} for a in obj.agents],
    }
    if obj.is_additive:
        out["weights"] = [format_rational(w) for w in obj.reward.weights]
    else:
        out["clauses"] = [[format_rational(w) for w in c] for c in obj.reward.clauses]
    return out


def dumps_instance(obj: AnyInstance) -> str:
    return json.dumps(instance_to_dict(obj), indent=2) + "\n"


class _Reader:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source

    def line_of(self, value=None, key=None, needle=None) -> int | None:
        """First line holding the offending key or value; good enough to
        point a reader at the problem."""
        if needle is not None:
            pass
        elif key is not None:
            needle = json.dumps(key) + ":"
        elif value is not None:
            needle = json.dumps(value)
        else:
            return None
        at = self.text.find(needle)
        return self.text.count("\n", 0, at) + 1 if at >= 0 else None

    def fail(self, message: str, value=None, key=None, needle=None):
        raise SchemaError(message, self.line_of(value, key, needle), self.source)

    def rational(self, value, what: str):
        if not isinstance(value, str):
            self.fail(f"{what}: expected a rational string, got {json.dumps(value)}", value)
        try:
            return parse_rational(value)
        except ValueError as exc:
            self.fail(f"{what}: {exc}", value)

    def field(self, obj: dict, key: str, kind, what: str):
        if key not in obj:
            self.fail(f"{what}: missing field {key!r}")
        value = obj[key]
        if not isinstance(value, kind):
            self.fail(f"{what}: field {key!r} has the wrong type", key=key)
        return value


def loads_instance(text: str, source: str = "<string>") -> AnyInstance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    r = _Reader(text, source)
    if not isinstance(data, dict):
        r.fail("top level must be an object")
    version = data.get("version")
    if version != FORMAT_VERSION:
        r.fail(f"unsupported version {json.dumps(version)} (expected {FORMAT_VERSION})", key="version")
    kind = data.get("kind")
    if kind not in KINDS:
        r.fail(f"unknown kind {json.dumps(kind)} (expected one of {', '.join(KINDS)})", key="kind")
    label = data.get("label", "")
    if not isinstance(label, str):
        r.fail("label must be a string", key="label")
    try:
        if kind == "oks":
            return _load_oks(r, data, label)
        return _load_omac(r, data, kind, label)
    except InstanceError as exc:
        raise SchemaError(str(exc), None, source) from None


def _check_ids(r: _Reader, rows, what: str):
    for pos, row in enumerate(rows):
        if not isinstance(row, dict):
            r.fail(f"{what} {pos + 1} must be an object")
        if "id" in row and row["id"] != pos + 1:
            r.fail(f"{what} at position {pos + 1} has id {json.dumps(row['id'])}",
                   needle=f'"id": {json.dumps(row["id"])}')


def _load_oks(r: _Reader, data: dict, label: str) -> OksInstance:
    budget = r.rational(r.field(data, "budget", str, "oks"), "budget")
    items = r.field(data, "items", list, "oks")
    _check_ids(r, items, "item")
    parsed = []
    for pos, row in enumerate(items):
        value = r.rational(r.field(row, "value", str, f"item {pos + 1}"), f"item {pos + 1} value")
        cost = r.rational(r.field(row, "cost", str, f"item {pos + 1}"), f"item {pos + 1} cost")
        parsed.append(OksItem(pos, value, cost))
    return OksInstance(tuple(parsed), budget, label)


def _load_omac(r: _Reader, data: dict, kind: str, label: str) -> Instance:
    family = data.get("family", {})
    if not isinstance(family, dict) or not all(isinstance(v, str) for v in family.values()):
        r.fail("family must map names to strings", key="family")
    rows = r.field(data, "agents", list, kind)
    _check_ids(r, rows, "agent")
    agents = tuple(
        Agent(pos, r.rational(r.field(row, "cost", str, f"agent {pos + 1}"), f"agent {pos + 1} cost"))
        for pos, row in enumerate(rows)
    )
    n = len(agents)
    if kind == "omac_additive":
        if "clauses" in data:
            r.fail("additive files carry 'weights', not 'clauses'", key="clauses")
        weights = r.field(data, "weights", list, kind)
        if len(weights) != n:
            r.fail(f"{len(weights)} weights for {n} agents", key="weights")
        reward = RewardFunction.additive(r.rational(w, f"weight {j + 1}") for j, w in enumerate(weights))
    else:
        if "weights" in data:
            r.fail("xos files carry 'clauses', not 'weights'", key="weights")
        clauses = r.field(data, "clauses", list, kind)
        if not clauses:
            r.fail("an xos reward needs at least one clause", key="clauses")
        parsed = []
        for ell, clause in enumerate(clauses):
            if not isinstance(clause, list):
                r.fail(f"clause {ell + 1} must be a list", key="clauses")
            if len(clause) != n:
                r.fail(f"clause {ell + 1} has {len(clause)} entries for {n} agents", key="clauses")
            parsed.append([r.rational(w, f"clause {ell + 1} entry {j + 1}") for j, w in enumerate(clause)])
        reward = RewardFunction.xos(parsed)
    return Instance(agents, reward, label, dict(family))


def save_instance(obj: AnyInstance, path) -> None:
    Path(path).write_text(dumps_instance(obj))


def load_instance(path) -> AnyInstance:
    path = Path(path)
    return loads_instance(path.read_text(), str(path))
