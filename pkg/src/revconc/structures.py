"""Events, configurations and (pointed) configuration structures.

Configurations are plain ``frozenset`` objects of event names. A
:class:`ConfigurationStructure` pairs a finite universe with a family of
configurations; it is deliberately permissive on construction so that
:func:`validate` can report every broken invariant instead of failing on the
first one.

Canonical order, used for every listing and every "first counterexample":
events sorted by name, configurations sorted by ``(cardinality, sorted names)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .errors import PreconditionError, ResourceError

Configuration = frozenset

DEFAULT_BIJECTION_CAP = 10


def conf(events: Iterable[str] = ()) -> frozenset:
    """Build a configuration from an iterable of event names."""
    if isinstance(events, str):
        raise TypeError("pass an iterable of event names, not a single string")
    return frozenset(events)


def config_key(x: Iterable[str]):
    names = tuple(sorted(x))
    return (len(names), names)


def sort_configs(configs: Iterable[frozenset]) -> list[frozenset]:
    return sorted(configs, key=config_key)


def render(x: Iterable[str]) -> str:
    """Canonical text of a configuration, e.g. ``{a,c}``."""
    return "{" + ",".join(sorted(x)) + "}"


def split_events(text: str) -> list[str]:
    """Split a comma-separated event list, ignoring commas nested in braces.

    ``"{a},{a,c},b"`` gives ``["{a}", "{a,c}", "b"]``; the empty string gives
    the empty list.
    """
    out, depth, cur = [], 0, []
    for ch in text.strip():
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
            continue
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return out


def valid_event_name(name: object) -> bool:
    """Non-empty printable token without whitespace.

    Commas are only accepted inside a braced prime rendering such as
    ``{a,c}``, which is how events minted from prime configurations are named.
    """
    if not isinstance(name, str) or not name or not name.isprintable():
        return False
    if any(ch.isspace() for ch in name):
        return False
    if "," in name and not (name.startswith("{") and name.endswith("}")):
        return False
    return True


@dataclass(frozen=True)
class ConfigurationStructure:
    """A finite universe of events with a family of configurations."""

    events: frozenset
    configs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "events", frozenset(self.events))
        object.__setattr__(self, "configs", frozenset(frozenset(x) for x in self.configs))

    @classmethod
    def of(cls, events: Iterable[str], configs: Iterable[Iterable[str]]) -> "ConfigurationStructure":
        return cls(frozenset(events), frozenset(frozenset(x) for x in configs))

    @property
    def universe(self) -> frozenset:
        return self.events

    def __contains__(self, x) -> bool:
        return frozenset(x) in self.configs

    def __len__(self) -> int:
        return len(self.configs)

    def __iter__(self):
        return iter(self.sorted_configs)

    def __repr__(self) -> str:
        body = ", ".join(render(x) for x in self.sorted_configs)
        return f"ConfigurationStructure({render(self.events)}, [{body}])"

    # Bitmask view used by the kernels: bit i is the i-th sorted event.

    @cached_property
    def order(self) -> tuple:
        return tuple(sorted(self.events | frozenset().union(*self.configs)))

    @cached_property
    def bit(self) -> dict:
        return {e: 1 << i for i, e in enumerate(self.order)}

    @cached_property
    def sorted_configs(self) -> tuple:
        return tuple(sort_configs(self.configs))

    @cached_property
    def masks(self) -> tuple:
        return tuple(self.mask(x) for x in self.sorted_configs)

    @cached_property
    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.masks)}

    @cached_property
    def superset_bits(self) -> tuple:
        """``superset_bits[i]`` has bit ``j`` set iff config ``i`` is a subset of config ``j``."""
        ms = self.masks
        return tuple(sum(1 << j for j, mj in enumerate(ms) if mi & ~mj == 0) for mi in ms)

    @cached_property
    def memo(self) -> dict:
        """Per-instance cache for derived data (primes, stability); not part of equality."""
        return {}

    def mask(self, x: Iterable[str]) -> int:
        bit = self.bit
        out = 0
        for e in x:
            try:
                out |= bit[e]
            except KeyError:
                raise PreconditionError(f"event {e!r} is not in the universe") from None
        return out

    def from_mask(self, m: int) -> frozenset:
        order = self.order
        return frozenset(order[i] for i in range(m.bit_length()) if (m >> i) & 1)

    def require(self, x: Iterable[str]) -> frozenset:
        x = frozenset(x)
        if x not in self.configs:
            raise PreconditionError(f"{render(x)} is not a configuration of the structure")
        return x


@dataclass(frozen=True)
class PointedConfigurationStructure:
    """A configuration structure with a distinguished configuration, its referential."""

    base: ConfigurationStructure
    referential: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "referential", frozenset(self.referential))

    @property
    def events(self) -> frozenset:
        return self.base.events

    @property
    def configs(self) -> frozenset:
        return self.base.configs

    @property
    def initial(self) -> bool:
        return not self.referential

    def __repr__(self) -> str:
        return f"Pointed({self.base!r}, referential={render(self.referential)})"


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def lines(self) -> list[str]:
        if self.valid:
            return ["valid"]
        return [str(v) for v in self.violations]


def validate(structure: ConfigurationStructure | PointedConfigurationStructure) -> ValidationReport:
    """List every violated invariant of a (pointed) configuration structure."""
    if isinstance(structure, PointedConfigurationStructure):
        report = validate(structure.base)
        extra = []
        if structure.referential not in structure.base.configs:
            extra.append(
                Violation(
                    "referential",
                    f"referential {render(structure.referential)} is not a configuration",
                    (structure.referential,),
                )
            )
        return ValidationReport(report.violations + tuple(extra))

    out = []
    for e in sorted(structure.events, key=str):
        if not valid_event_name(e):
            out.append(Violation("event-name", f"{e!r} is not a valid event name", (e,)))
    if frozenset() not in structure.configs:
        out.append(Violation("rooted", "the empty configuration is missing", ()))
    for x in sort_configs(structure.configs):
        stray = x - structure.events
        if stray:
            out.append(
                Violation(
                    "universe",
                    f"{render(x)} escapes the universe (extra events {render(stray)})",
                    (x,),
                )
            )
    return ValidationReport(tuple(out))


def _require_all(C: ConfigurationStructure, Y: Iterable[Iterable[str]]) -> list[frozenset]:
    return [C.require(y) for y in Y]


def down_set(C: ConfigurationStructure, Y: Iterable[Iterable[str]]) -> frozenset:
    """Configurations of ``C`` contained in some member of ``Y``."""
    ys = _require_all(C, Y)
    return frozenset(x for x in C.configs if any(x <= y for y in ys))


def up_set(C: ConfigurationStructure, Y: Iterable[Iterable[str]]) -> frozenset:
    """Configurations of ``C`` containing some member of ``Y``."""
    ys = _require_all(C, Y)
    return frozenset(x for x in C.configs if any(y <= x for y in ys))


@dataclass(frozen=True)
class OrderQueryResult:
    """Outcome of a least-upper-bound or greatest-lower-bound query.

    ``witnesses`` is the full set of upper (resp. lower) bounds examined, so an
    absent ``value`` with empty witnesses means "no bound at all" while an
    absent value with witnesses means "bounds exist but none is extremal".
    """

    value: Optional[frozenset]
    witnesses: frozenset

    @property
    def exists(self) -> bool:
        return self.value is not None

    @property
    def reason(self) -> str:
        if self.value is not None:
            return "exists"
        return "no-bound" if not self.witnesses else "no-extremal-bound"


def lub_query(C: ConfigurationStructure, Y: Iterable[Iterable[str]]) -> OrderQueryResult:
    ys = _require_all(C, Y)
    ub = frozenset(z for z in C.configs if all(y <= z for y in ys))
    least = [u for u in ub if all(u <= z for z in ub)]
    return OrderQueryResult(least[0] if least else None, ub)


def glb_query(C: ConfigurationStructure, Y: Iterable[Iterable[str]]) -> OrderQueryResult:
    ys = _require_all(C, Y)
    lb = frozenset(z for z in C.configs if all(z <= y for y in ys))
    greatest = [u for u in lb if all(z <= u for z in lb)]
    return OrderQueryResult(greatest[0] if greatest else None, lb)


def lub(C: ConfigurationStructure, Y: Iterable[Iterable[str]]) -> Optional[frozenset]:
    """Least upper bound of ``Y`` in ``C``, or ``None``."""
    return lub_query(C, Y).value


def glb(C: ConfigurationStructure, Y: Iterable[Iterable[str]]) -> Optional[frozenset]:
    """Greatest lower bound of ``Y`` in ``C``, or ``None``."""
    return glb_query(C, Y).value


def compatible(C: ConfigurationStructure, x, y) -> bool:
    """True iff ``{x, y}`` has a least upper bound in ``C``."""
    return lub_query(C, [x, y]).value is not None


def bounded(C: ConfigurationStructure, x, y) -> bool:
    """True iff some configuration of ``C`` contains ``x | y``."""
    u = C.require(x) | C.require(y)
    return any(u <= z for z in C.configs)


def orthogonal(C: ConfigurationStructure, x, y) -> bool:
    """Compatible and incomparable."""
    x, y = frozenset(x), frozenset(y)
    return compatible(C, x, y) and not x <= y and not y <= x


class Polarity(enum.IntEnum):
    NEGATIVE = -1
    POSITIVE = 1


class Direction(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"
    MIXED = "mixed"


def polarity_of_event(P: PointedConfigurationStructure, e: str) -> Polarity:
    if e not in P.base.events:
        raise PreconditionError(f"event {e!r} is not in the universe")
    return Polarity.NEGATIVE if e in P.referential else Polarity.POSITIVE


def classify_configuration(P: PointedConfigurationStructure, x) -> Direction:
    """Direction of ``x`` relative to the referential; the empty set counts as forward."""
    x = P.base.require(x)
    if not x & P.referential:
        return Direction.FORWARD
    if x <= P.referential:
        return Direction.BACKWARD
    return Direction.MIXED


def equivalent(
    C1: ConfigurationStructure, C2: ConfigurationStructure, cap: int = DEFAULT_BIJECTION_CAP
) -> Optional[dict]:
    """An event bijection mapping the configurations of ``C1`` onto those of ``C2``.

    Backtracking over events, pairing only events with the same occurrence
    profile (how many configurations of each size contain them).
    """
    if len(C1.events) != len(C2.events) or len(C1.configs) != len(C2.configs):
        return None
    if len(C1.events) > cap:
        raise ResourceError(f"bijection search capped at {cap} events (got {len(C1.events)})")

    def profile(C, e):
        sizes = sorted(len(x) for x in C.configs if e in x)
        return tuple(sizes)

    left = sorted(C1.events, key=lambda e: (profile(C1, e), e))
    prof2 = {e: profile(C2, e) for e in C2.events}
    if sorted(profile(C1, e) for e in left) != sorted(prof2.values()):
        return None
    target = C2.configs
    configs1 = [(x, frozenset(x)) for x in C1.configs]
    mapping: dict = {}
    used: set = set()

    def consistent() -> bool:
        for x, _ in configs1:
            if all(e in mapping for e in x):
                if frozenset(mapping[e] for e in x) not in target:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == len(left):
            return True
        e = left[i]
        pe = profile(C1, e)
        for f in sorted(C2.events):
            if f in used or prof2[f] != pe:
                continue
            mapping[e] = f
            used.add(f)
            if consistent() and extend(i + 1):
                return True
            del mapping[e]
            used.discard(f)
        return False

    if extend(0):
        return dict(mapping)
    return None


def rename(C: ConfigurationStructure, mapping: Mapping[str, str]) -> ConfigurationStructure:
    """Image of ``C`` under an event renaming (events missing from the map are kept)."""
    f = lambda e: mapping.get(e, e)  # noqa: E731
    return ConfigurationStructure.of(
        (f(e) for e in C.events), (frozenset(f(e) for e in x) for x in C.configs)
    )


def powerset(events: Iterable[str]) -> list[frozenset]:
    items = sorted(events)
    out = []
    for m in range(1 << len(items)):
        out.append(frozenset(items[i] for i in range(len(items)) if (m >> i) & 1))
    return sort_configs(out)
