"""JSON documents for the four structure kinds, and Graphviz export.

Documents are UTF-8 JSON objects discriminated by ``kind``::

    {"kind":"cs","events":["a","b"],"configurations":[[],["a"],["b"]]}
    {"kind":"pointed-cs", ..., "referential":["b"]}
    {"kind":"pes","events":["a","b","c"],"causality":[["b","c"]],"conflict":[["a","c"]]}
    {"kind":"polarized-pes", ..., "polarity":{"a":1,"b":-1,"c":1}}

Serialization is canonical: fixed key order, sorted events, configurations
in (cardinality, names) order, causality as its cover relation, conflict as
sorted unordered pairs. Optional members are omitted at their default.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .errors import InvalidStructure, ParseError
from .event_structures import (
    PolarizedEventStructure,
    PrimeEventStructure,
    RawEventStructure,
    RawPolarizedStructure,
    causal_closure,
    functor_C,
    pes_violations,
    polarized_violations,
)
from .structures import (
    ConfigurationStructure,
    PointedConfigurationStructure,
    ValidationReport,
    sort_configs,
    validate,
)

KINDS = ("cs", "pointed-cs", "pes", "polarized-pes")

_KEYS = {
    "cs": ({"kind", "events", "configurations"}, set()),
    "pointed-cs": ({"kind", "events", "configurations"}, {"referential"}),
    "pes": ({"kind", "events"}, {"causality", "conflict"}),
    "polarized-pes": ({"kind", "events"}, {"causality", "conflict", "polarity"}),
}

Value = Union[
    ConfigurationStructure,
    PointedConfigurationStructure,
    PrimeEventStructure,
    PolarizedEventStructure,
    RawEventStructure,
    RawPolarizedStructure,
]


@dataclass(frozen=True)
class StructureDocument:
    kind: str
    value: Value

    @classmethod
    def of(cls, value: Value) -> "StructureDocument":
        return cls(kind_of(value), value)


def kind_of(value) -> str:
    if isinstance(value, PointedConfigurationStructure):
        return "pointed-cs"
    if isinstance(value, ConfigurationStructure):
        return "cs"
    if isinstance(value, (PolarizedEventStructure, RawPolarizedStructure)):
        return "polarized-pes"
    if isinstance(value, (PrimeEventStructure, RawEventStructure)):
        return "pes"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _locate(text: str, needle: str) -> tuple:
    pos = text.find(needle)
    if pos < 0:
        return 1, 1
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _fail(text: str, message: str, needle: str = "") -> ParseError:
    line, col = _locate(text, needle) if needle else (1, 1)
    return ParseError(message, line, col)


def _string_list(text: str, value, what: str) -> list:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise _fail(text, f"{what} must be a list of strings", f'"{what}"' if what.isidentifier() else "")
    return value


def _pair_list(text: str, value, what: str) -> list:
    if not isinstance(value, list):
        raise _fail(text, f"{what} must be a list of pairs", f'"{what}"')
    out = []
    for item in value:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(v, str) for v in item)):
            raise _fail(text, f"{what} entries must be two-element lists of event names", f'"{what}"')
        out.append((item[0], item[1]))
    return out


def parse_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object", 1, 1)
    kind = data.get("kind")
    if kind not in KINDS:
        raise _fail(text, f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", '"kind"')
    required, optional = _KEYS[kind]
    missing = required - data.keys()
    if missing:
        raise _fail(text, f"missing member(s): {', '.join(sorted(missing))}")
    extra = data.keys() - required - optional
    if extra:
        key = sorted(extra)[0]
        raise _fail(text, f"unexpected member {key!r} for kind {kind!r}", f'"{key}"')
    events = _string_list(text, data["events"], "events")
    if len(set(events)) != len(events):
        dup = next(e for e in events if events.count(e) > 1)
        raise _fail(text, f"duplicate event {dup!r}", '"events"')
    return data


def parse(text: str, strict: bool = True) -> StructureDocument:
    """Read a document.

    Syntax problems raise :class:`ParseError` with a line and column. With
    ``strict`` an invariant violation raises :class:`InvalidStructure`;
    otherwise the (possibly raw) value is returned for :func:`check_document`.
    """
    data = parse_json(text)
    kind = data["kind"]
    events = frozenset(data["events"])
    if kind in ("cs", "pointed-cs"):
        raw_configs = data["configurations"]
        if not isinstance(raw_configs, list):
            raise _fail(text, "configurations must be a list of lists", '"configurations"')
        configs = [frozenset(_string_list(text, x, "configurations")) for x in raw_configs]
        value = ConfigurationStructure(events, frozenset(configs))
        if kind == "pointed-cs":
            ref = frozenset(_string_list(text, data.get("referential", []), "referential"))
            value = PointedConfigurationStructure(value, ref)
        if strict:
            report = validate(value)
            if not report.valid:
                raise InvalidStructure("invalid configuration structure", report.violations)
        return StructureDocument(kind, value)

    causality = _pair_list(text, data.get("causality", []), "causality")
    conflict = _pair_list(text, data.get("conflict", []), "conflict")
    sym = frozenset(conflict) | frozenset((b, a) for a, b in conflict)
    leq = frozenset(causal_closure(events, causality))
    value = RawEventStructure(events, leq, sym)
    if kind == "polarized-pes":
        pol = data.get("polarity", {})
        if not isinstance(pol, dict) or not all(v in (1, -1) and not isinstance(v, bool) for v in pol.values()):
            raise _fail(text, "polarity must map events to 1 or -1", '"polarity"')
        value = RawPolarizedStructure(value, frozenset(e for e, v in pol.items() if v == -1))
        if set(pol) - events:
            raise _fail(text, f"polarity names unknown event {sorted(set(pol) - events)[0]!r}", '"polarity"')
    if strict:
        return StructureDocument(kind, certify(value))
    return StructureDocument(kind, value)


def certify(value):
    """Turn a raw event structure into a validated one, or raise."""
    if isinstance(value, RawPolarizedStructure):
        bad = polarized_violations(value)
        if bad:
            raise InvalidStructure("invalid polarized event structure", bad)
        return PolarizedEventStructure(PrimeEventStructure(value.raw.events, value.raw.leq, value.raw.conflict), value.negative)
    if isinstance(value, RawEventStructure):
        bad = pes_violations(value)
        if bad:
            raise InvalidStructure("invalid prime event structure", bad)
        return PrimeEventStructure(value.events, value.leq, value.conflict)
    return value


def check_document(doc: StructureDocument) -> ValidationReport:
    v = doc.value
    if isinstance(v, (ConfigurationStructure, PointedConfigurationStructure)):
        return validate(v)
    if isinstance(v, (RawPolarizedStructure, PolarizedEventStructure)):
        raw = v if isinstance(v, RawPolarizedStructure) else RawPolarizedStructure(v.pes.as_raw(), v.negative)
        return ValidationReport(tuple(polarized_violations(raw)))
    return ValidationReport(tuple(pes_violations(v)))


def _covers(leq: frozenset, events: frozenset) -> list:
    strict = {(a, b) for a, b in leq if a != b}
    return sorted(
        (a, b) for a, b in strict if not any((a, c) in strict and (c, b) in strict for c in events)
    )


def to_data(value) -> dict:
    kind = kind_of(value)
    if kind in ("cs", "pointed-cs"):
        base = value.base if kind == "pointed-cs" else value
        data = {
            "kind": kind,
            "events": sorted(base.events),
            "configurations": [sorted(x) for x in sort_configs(base.configs)],
        }
        if kind == "pointed-cs" and value.referential:
            data["referential"] = sorted(value.referential)
        return data
    pes = value.pes if kind == "polarized-pes" else value
    data = {
        "kind": kind,
        "events": sorted(pes.events),
        "causality": [list(p) for p in _covers(pes.leq, pes.events)],
        "conflict": [[a, b] for a, b in sorted(pes.conflict) if a < b],
    }
    if kind == "polarized-pes" and value.negative:
        data["polarity"] = {e: (-1 if e in value.negative else 1) for e in sorted(pes.events)}
    return data


def serialize(doc) -> str:
    """Canonical text of a document or bare value, newline-terminated."""
    value = doc.value if isinstance(doc, StructureDocument) else doc
    return json.dumps(to_data(value), separators=(",", ":"), ensure_ascii=False) + "\n"


def canonicalize(text: str) -> str:
    return serialize(parse(text, strict=False))


# Graph export


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _config_label(x: frozenset, negative: frozenset) -> str:
    if not x:
        return "∅"
    return "{" + ",".join(e + ("⁻" if e in negative else "") for e in sorted(x)) + "}"


def _hasse(value) -> list[str]:
    pointed = isinstance(value, PointedConfigurationStructure)
    base = value.base if pointed else value
    ref = value.referential if pointed else None
    neg = ref or frozenset()
    cs = base.sorted_configs
    ident = {x: f"n{i}" for i, x in enumerate(cs)}
    lines = ["digraph configurations {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in cs:
        label = _config_label(x, neg)
        attrs = f"label={_quote(label)}"
        if pointed and x == ref:
            attrs = f"label={_quote(label + '†')}, shape=box, peripheries=2"
        lines.append(f"  {ident[x]} [{attrs}];")
    for x in cs:
        for y in cs:
            if x < y and not any(x < z < y for z in cs):
                lines.append(f"  {ident[x]} -> {ident[y]};")
    lines.append("}")
    return lines


def _es(value) -> list[str]:
    polarized = isinstance(value, (PolarizedEventStructure, RawPolarizedStructure))
    pes = value.pes if polarized else value
    neg = value.negative if polarized else frozenset()
    events = sorted(pes.events)
    ident = {e: f"e{i}" for i, e in enumerate(events)}
    lines = ["digraph events {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for e in events:
        label = e + (("−" if e in neg else "+") if polarized else "")
        lines.append(f"  {ident[e]} [label={_quote(label)}];")
    for a, b in _covers(pes.leq, pes.events):
        lines.append(f"  {ident[a]} -> {ident[b]};")
    for a, b in sorted(pes.conflict):
        if a < b:
            lines.append(f"  {ident[a]} -> {ident[b]} [style=dashed, dir=none];")
    lines.append("}")
    return lines


def export_dot(doc, style: str | None = None) -> str:
    """Graphviz text: ``hasse`` for configuration structures, ``es`` for event structures.

    With ``style="hasse"`` an event structure is drawn through its
    configurations.
    """
    value = doc.value if isinstance(doc, StructureDocument) else doc
    kind = kind_of(value)
    if style is None:
        style = "hasse" if kind in ("cs", "pointed-cs") else "es"
    if style == "hasse":
        if kind in ("pes", "polarized-pes"):
            pes = certify(value)
            if isinstance(pes, PolarizedEventStructure):
                value = PointedConfigurationStructure(functor_C(pes.pes), pes.negative)
            else:
                value = functor_C(pes)
        return "\n".join(_hasse(value)) + "\n"
    if style == "es":
        if kind in ("cs", "pointed-cs"):
            raise ValueError("the es style needs an event structure; convert with to-es first")
        return "\n".join(_es(value)) + "\n"
    raise ValueError(f"unknown style {style!r}")
