"""JSON encoding of domains, generators and reports.

Rationals always travel as strings ``"n"`` or ``"n/d"`` so that a parse and
dump round trip is lossless.  Structural problems (wrong shape, unknown type,
missing keys) raise :class:`SchemaError`; well-formed documents describing an
invalid domain raise the usual :class:`ToricError` subclasses.
"""
from __future__ import annotations

import enum
import json
from dataclasses import fields, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .curves import EndSpec
from .domains import (
    ConvexToricDomain,
    DomainKind,
    ToricError,
    as_rational,
    make_ball,
    make_ellipsoid,
    make_polydisk,
    make_polygon,
)
from .ech import ConvexGenerator, Edge
from .orbits import OrbitFamilyLabel, OrbitSet


class SchemaError(ToricError):
    """A JSON document does not have the expected structure."""


def _require(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    return obj[key]


def _rational_field(obj: dict, key: str, where: str) -> Fraction:
    value = _require(obj, key, where)
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise SchemaError(f"{where}.{key}: rationals must be strings like \"3/2\"")
    return as_rational(value)


def _int_field(obj: dict, key: str, where: str, default: Any = None) -> int:
    if default is not None and key not in obj:
        return default
    value = _require(obj, key, where)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{where}.{key}: expected an integer")
    return value


def domain_from_json(obj: Any) -> ConvexToricDomain:
    kind = _require(obj, "type", "domain")
    if kind == "ellipsoid":
        return make_ellipsoid(_rational_field(obj, "a", "domain"), _rational_field(obj, "b", "domain"))
    if kind == "polydisk":
        return make_polydisk(_rational_field(obj, "a", "domain"), _rational_field(obj, "b", "domain"))
    if kind == "ball":
        return make_ball(_rational_field(obj, "r", "domain"))
    if kind == "polygon":
        raw = _require(obj, "breakpoints", "domain")
        if not isinstance(raw, list):
            raise SchemaError("domain.breakpoints: expected a list of [x, y] pairs")
        pts = []
        for i, pair in enumerate(raw):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(f"domain.breakpoints[{i}]: expected an [x, y] pair")
            pts.append(tuple(_rational_field(dict(enumerate(pair)), j, f"domain.breakpoints[{i}]")
                             for j in (0, 1)))
        return make_polygon(pts)
    raise SchemaError(f"domain: unknown type {kind!r}")


def domain_to_json(domain: ConvexToricDomain) -> dict:
    if domain.kind is DomainKind.ELLIPSOID:
        a, b = domain.params
        return {"type": "ellipsoid", "a": str(a), "b": str(b)}
    if domain.kind is DomainKind.POLYDISK:
        a, b = domain.params
        return {"type": "polydisk", "a": str(a), "b": str(b)}
    if domain.kind is DomainKind.BALL:
        return {"type": "ball", "r": str(domain.params[0])}
    return {"type": "polygon", "breakpoints": [[str(x), str(y)] for x, y in domain.breakpoints]}


def generator_from_json(obj: Any) -> ConvexGenerator:
    raw = _require(obj, "edges", "generator")
    if not isinstance(raw, list):
        raise SchemaError("generator.edges: expected a list")
    edges = []
    for i, ed in enumerate(raw):
        where = f"generator.edges[{i}]"
        label = ed.get("label", "e") if isinstance(ed, dict) else None
        if label not in ("e", "h"):
            raise SchemaError(f"{where}.label: expected \"e\" or \"h\"")
        edges.append(Edge(_int_field(ed, "p", where), _int_field(ed, "q", where),
                          _int_field(ed, "m", where, default=1), label))
    return ConvexGenerator.from_edges(edges)


def generator_to_json(gen: ConvexGenerator) -> dict:
    return {"edges": [{"p": ed.p, "q": ed.q, "m": ed.m, "label": ed.label.value} for ed in gen.edges]}


def orbit_set_to_json(oset: OrbitSet) -> list[dict]:
    return [{"p": lab.p, "q": lab.q, "kind": lab.kind.value, "multiplicity": m}
            for lab, m in oset.entries]


def label_to_json(label: OrbitFamilyLabel) -> dict:
    return {"p": label.p, "q": label.q, "kind": label.kind.value}


def end_from_json(obj: Any, where: str) -> EndSpec:
    sign = _require(obj, "sign", where)
    if sign not in ("+", "-"):
        raise SchemaError(f"{where}.sign: expected \"+\" or \"-\"")
    return EndSpec(sign, _int_field(obj, "cz", where), _int_field(obj, "d", where, default=1))


def to_jsonable(value: Any) -> Any:
    """Recursively turn reports into JSON-ready data, rationals as strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, ConvexToricDomain):
        return domain_to_json(value)
    if isinstance(value, ConvexGenerator):
        return generator_to_json(value)
    if isinstance(value, OrbitSet):
        return orbit_set_to_json(value)
    if isinstance(value, OrbitFamilyLabel):
        return label_to_json(value)
    if hasattr(value, "_asdict"):
        return {k: to_jsonable(v) for k, v in value._asdict().items()}
    if is_dataclass(value):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__} as JSON")


def dumps(value: Any) -> str:
    return json.dumps(to_jsonable(value), indent=2, sort_keys=True) + "\n"


def load_json(path: str | Path) -> Any:
    """Read a JSON file; OSError propagates, malformed JSON becomes SchemaError."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_domain(path: str | Path) -> ConvexToricDomain:
    return domain_from_json(load_json(path))
