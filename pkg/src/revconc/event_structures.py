"""Prime and polarized event structures, and the constructions linking them
to stable configuration structures.

Causality is stored as the full reflexive order ``leq`` (a set of pairs);
the strict order and the cover relation are derived. Conflict is a
symmetric set of ordered pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional

from .errors import InvalidStructure, PreconditionError, ResourceError
from .stability import complete_primes, derivatives, require_stable
from .structures import (
    ConfigurationStructure,
    PointedConfigurationStructure,
    Polarity,
    Violation,
    render,
    sort_configs,
    valid_event_name,
)

ENUMERATION_CAP = 20
ISO_CAP = 10


def _pairs(rel: Iterable) -> frozenset:
    return frozenset((a, b) for a, b in rel)


@dataclass(frozen=True)
class RawEventStructure:
    """Events with a causality and a conflict relation, no axioms assumed."""

    events: frozenset
    leq: frozenset
    conflict: frozenset

    def __post_init__(self):
        object.__setattr__(self, "events", frozenset(self.events))
        object.__setattr__(self, "leq", _pairs(self.leq))
        object.__setattr__(self, "conflict", _pairs(self.conflict))


def pes_violations(raw) -> list[Violation]:
    """Every broken prime-event-structure axiom, each with a witness."""
    E = raw.events
    leq, conflict = raw.leq, raw.conflict
    out = []
    for e in sorted(E):
        if not valid_event_name(e):
            out.append(Violation("event-name", f"{e!r} is not a valid event name", (e,)))
    for a, b in sorted(leq | conflict):
        if a not in E or b not in E:
            out.append(Violation("universe", f"relation mentions an unknown event in ({a}, {b})", (a, b)))
    for e in sorted(E):
        if (e, e) not in leq:
            out.append(Violation("reflexive", f"{e} is not below itself", (e,)))
    for a, b in sorted(leq):
        if a != b and (b, a) in leq:
            if a < b:
                out.append(Violation("antisymmetric", f"{a} and {b} cause each other", (a, b)))
    succ: dict = {}
    for a, b in leq:
        succ.setdefault(a, set()).add(b)
    for a, b in sorted(leq):
        for c in sorted(succ.get(b, ())):
            if (a, c) not in leq:
                out.append(Violation("transitive", f"{a} <= {b} <= {c} but not {a} <= {c}", (a, b, c)))
    for a, b in sorted(conflict):
        if a == b:
            out.append(Violation("irreflexive", f"{a} is in conflict with itself", (a,)))
        elif (b, a) not in conflict:
            out.append(Violation("symmetric", f"{a} # {b} but not {b} # {a}", (a, b)))
    for a, b in sorted(conflict):
        for c in sorted(succ.get(b, ())):
            if (a, c) not in conflict and a != c:
                out.append(Violation("heredity", f"{a} # {b} <= {c} but not {a} # {c}", (a, b, c)))
    for a, b in sorted(conflict):
        if a != b and ((a, b) in leq or (b, a) in leq):
            if a < b:
                out.append(Violation("disjoint", f"{a} and {b} are both causally related and in conflict", (a, b)))
    return out


@dataclass(frozen=True)
class PrimeEventStructure:
    """A prime event structure; construction fails on any axiom violation."""

    events: frozenset
    leq: frozenset
    conflict: frozenset

    def __post_init__(self):
        object.__setattr__(self, "events", frozenset(self.events))
        object.__setattr__(self, "leq", _pairs(self.leq))
        object.__setattr__(self, "conflict", _pairs(self.conflict))
        bad = pes_violations(self)
        if bad:
            raise InvalidStructure("not a prime event structure", bad)

    @classmethod
    def from_relations(
        cls, events: Iterable[str], causality: Iterable = (), conflict: Iterable = ()
    ) -> "PrimeEventStructure":
        """Close ``causality`` reflexively and transitively and symmetrize ``conflict``.

        A causal cycle between distinct events is rejected with the cycle as
        witness; heredity is not closed for the caller.
        """
        events = frozenset(events)
        leq = causal_closure(events, causality)
        for a, b in sorted(leq):
            if a < b and (b, a) in leq:
                raise InvalidStructure(
                    "causality has a cycle", [Violation("cycle", f"{a} and {b} lie on a causal cycle", (a, b))]
                )
        sym = set()
        for a, b in conflict:
            sym.add((a, b))
            sym.add((b, a))
        return cls(events, frozenset(leq), frozenset(sym))

    @cached_property
    def strict(self) -> frozenset:
        return frozenset((a, b) for a, b in self.leq if a != b)

    @cached_property
    def covers(self) -> frozenset:
        """Hasse reduction of the strict causal order."""
        strict = self.strict
        return frozenset(
            (a, b) for a, b in strict if not any((a, c) in strict and (c, b) in strict for c in self.events)
        )

    @cached_property
    def causes(self) -> dict:
        """Strict causes of each event."""
        out = {e: set() for e in self.events}
        for a, b in self.strict:
            out[b].add(a)
        return {e: frozenset(s) for e, s in out.items()}

    @cached_property
    def conflicts_of(self) -> dict:
        out = {e: set() for e in self.events}
        for a, b in self.conflict:
            out[a].add(b)
        return {e: frozenset(s) for e, s in out.items()}

    def conflict_pairs(self) -> list[tuple]:
        """Unordered conflicting pairs, sorted."""
        return sorted((a, b) for a, b in self.conflict if a < b)

    def is_configuration(self, x: Iterable[str]) -> bool:
        x = frozenset(x)
        if not x <= self.events:
            return False
        for e in x:
            if not self.causes[e] <= x or self.conflicts_of[e] & x:
                return False
        return True

    def as_raw(self) -> RawEventStructure:
        return RawEventStructure(self.events, self.leq, self.conflict)

    def __repr__(self) -> str:
        cov = " ".join(f"{a}<{b}" for a, b in sorted(self.covers))
        con = " ".join(f"{a}#{b}" for a, b in self.conflict_pairs())
        return f"PES({render(self.events)}; {cov or '-'}; {con or '-'})"


def causal_closure(events: frozenset, causality: Iterable) -> set:
    """Reflexive-transitive closure of ``causality`` over ``events``."""
    leq = {(e, e) for e in events}
    leq.update((a, b) for a, b in causality)
    changed = True
    while changed:
        changed = False
        succ: dict = {}
        for a, b in leq:
            succ.setdefault(a, set()).add(b)
        for a, b in list(leq):
            for c in succ.get(b, ()):
                if (a, c) not in leq:
                    leq.add((a, c))
                    changed = True
    return leq


def validate_pes(raw) -> PrimeEventStructure:
    """Certify a raw structure, raising :class:`InvalidStructure` with every violation."""
    bad = pes_violations(raw)
    if bad:
        raise InvalidStructure("not a prime event structure", bad)
    return PrimeEventStructure(raw.events, raw.leq, raw.conflict)


def _negative_violations(pes, negative: frozenset) -> list[Violation]:
    out = []
    stray = negative - pes.events
    if stray:
        out.append(Violation("polarity", f"negative events {render(stray)} are not events", tuple(sorted(stray))))
    elif isinstance(pes, PrimeEventStructure) and not pes.is_configuration(negative):
        out.append(Violation("polarity", f"negative events {render(negative)} do not form a configuration", (negative,)))
    elif isinstance(pes, RawEventStructure):
        for e in sorted(negative):
            below = {a for a, b in pes.leq if b == e}
            clash = {b for a, b in pes.conflict if a == e}
            if not below <= negative or clash & negative:
                out.append(
                    Violation("polarity", f"negative events {render(negative)} do not form a configuration", (negative,))
                )
                break
    return out


@dataclass(frozen=True)
class PolarizedEventStructure:
    """A prime event structure with its negative events, which form a configuration."""

    pes: PrimeEventStructure
    negative: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "negative", frozenset(self.negative))
        bad = _negative_violations(self.pes, self.negative)
        if bad:
            raise InvalidStructure("not a polarized event structure", bad)

    @classmethod
    def from_polarity(cls, pes: PrimeEventStructure, polarity: Mapping[str, int]) -> "PolarizedEventStructure":
        for e, v in polarity.items():
            if e not in pes.events:
                raise PreconditionError(f"polarity given for unknown event {e!r}")
            if int(v) not in (-1, 1):
                raise PreconditionError(f"polarity of {e!r} must be +1 or -1")
        return cls(pes, frozenset(e for e, v in polarity.items() if int(v) < 0))

    @property
    def events(self) -> frozenset:
        return self.pes.events

    @property
    def polarity(self) -> dict:
        return {e: Polarity.NEGATIVE if e in self.negative else Polarity.POSITIVE for e in sorted(self.events)}


@dataclass(frozen=True)
class RawPolarizedStructure:
    raw: RawEventStructure
    negative: frozenset

    def __post_init__(self):
        object.__setattr__(self, "negative", frozenset(self.negative))

    @property
    def pes(self) -> RawEventStructure:
        return self.raw

    @property
    def events(self) -> frozenset:
        return self.raw.events

    @property
    def polarity(self) -> dict:
        return {e: Polarity.NEGATIVE if e in self.negative else Polarity.POSITIVE for e in sorted(self.raw.events)}


def polarized_violations(raw_pol: RawPolarizedStructure) -> list[Violation]:
    return pes_violations(raw_pol.raw) + _negative_violations(raw_pol.raw, raw_pol.negative)


def validate_polarized(raw_pol: RawPolarizedStructure) -> PolarizedEventStructure:
    bad = polarized_violations(raw_pol)
    if bad:
        raise InvalidStructure("not a polarized event structure", bad)
    return PolarizedEventStructure(validate_pes(raw_pol.raw), raw_pol.negative)


def _linear_order(E: PrimeEventStructure) -> list[str]:
    order, placed = [], set()
    remaining = sorted(E.events)
    while remaining:
        for e in remaining:
            if E.causes[e] <= placed:
                order.append(e)
                placed.add(e)
                remaining.remove(e)
                break
    return order


def configurations(E: PrimeEventStructure, cap: int = ENUMERATION_CAP) -> list[frozenset]:
    """Conflict-free, causally down-closed event sets, in canonical order."""
    if len(E.events) > cap:
        raise ResourceError(f"configuration enumeration capped at {cap} events (got {len(E.events)})")
    order = _linear_order(E)
    out = []

    def grow(i: int, chosen: frozenset):
        if i == len(order):
            out.append(chosen)
            return
        e = order[i]
        grow(i + 1, chosen)
        if E.causes[e] <= chosen and not E.conflicts_of[e] & chosen:
            grow(i + 1, chosen | {e})

    grow(0, frozenset())
    return sort_configs(out)


def functor_C(E: PrimeEventStructure, cap: int = ENUMERATION_CAP) -> ConfigurationStructure:
    return ConfigurationStructure(E.events, frozenset(configurations(E, cap)))


def prime_names(C: ConfigurationStructure) -> dict:
    """Event name of each complete prime: its canonical rendering."""
    return {p: render(p) for p in sort_configs(complete_primes(C))}


def _pairwise_compatible(C: ConfigurationStructure, primes: list) -> set:
    sup = C.superset_bits
    idx = {x: i for i, x in enumerate(C.sorted_configs)}
    ok = set()
    for p, q in combinations(primes, 2):
        ub = sup[idx[p]] & sup[idx[q]]
        rest = ub
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            if sup[u] & ub == ub:
                ok.add((p, q))
                ok.add((q, p))
                break
            rest ^= low
    return ok


def functor_E(C: ConfigurationStructure) -> PrimeEventStructure:
    """Event structure of the complete primes: inclusion is causality, incompatibility is conflict.

    Events are named by the rendering of their prime, e.g. ``{a,c}``.
    """
    cached = C.memo.get("functor_E")
    if cached is not None:
        return cached
    require_stable(C)
    primes = sort_configs(complete_primes(C))
    name = {p: render(p) for p in primes}
    compat = _pairwise_compatible(C, primes)
    leq = frozenset((name[p], name[q]) for p in primes for q in primes if p <= q)
    conflict = frozenset((name[p], name[q]) for p in primes for q in primes if p != q and (p, q) not in compat)
    E = PrimeEventStructure(frozenset(name.values()), leq, conflict)
    C.memo["functor_E"] = E
    return E


def functor_E_pointed(P: PointedConfigurationStructure) -> PolarizedEventStructure:
    """Polarized event structure of a pointed structure: primes inside the referential are negative."""
    E = functor_E(P.base)
    negative = frozenset(render(p) for p in complete_primes(P.base) if p <= P.referential)
    return PolarizedEventStructure(E, negative)


def derivative_relabeling(C: ConfigurationStructure) -> dict:
    """Map each prime-named event of ``functor_E(C)`` to its derivative."""
    return {render(p): a for p, a in derivatives(C).items()}


def rename_pes(E: PrimeEventStructure, mapping: Mapping[str, str]) -> PrimeEventStructure:
    f = lambda e: mapping.get(e, e)  # noqa: E731
    return PrimeEventStructure(
        frozenset(f(e) for e in E.events),
        frozenset((f(a), f(b)) for a, b in E.leq),
        frozenset((f(a), f(b)) for a, b in E.conflict),
    )


def _invariant(E: PrimeEventStructure, e: str, negative: frozenset) -> tuple:
    return (len(E.causes[e]), sum(1 for a, b in E.strict if a == e), len(E.conflicts_of[e]), e in negative)


def _iso_search(
    E1: PrimeEventStructure, E2: PrimeEventStructure, neg1: frozenset, neg2: frozenset, cap: int
) -> Optional[dict]:
    if len(E1.events) != len(E2.events):
        return None
    if len(E1.leq) != len(E2.leq) or len(E1.conflict) != len(E2.conflict) or len(neg1) != len(neg2):
        return None
    if len(E1.events) > cap:
        raise ResourceError(f"isomorphism search capped at {cap} events (got {len(E1.events)})")
    inv1 = {e: _invariant(E1, e, neg1) for e in E1.events}
    inv2 = {e: _invariant(E2, e, neg2) for e in E2.events}
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    left = sorted(E1.events, key=lambda e: (inv1[e], e))
    right = sorted(E2.events)
    mapping: dict = {}
    used: set = set()

    def fits(e: str, f: str) -> bool:
        for d, g in mapping.items():
            if ((d, e) in E1.leq) != ((g, f) in E2.leq):
                return False
            if ((e, d) in E1.leq) != ((f, g) in E2.leq):
                return False
            if ((d, e) in E1.conflict) != ((g, f) in E2.conflict):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(left):
            return True
        e = left[i]
        for f in right:
            if f in used or inv2[f] != inv1[e] or not fits(e, f):
                continue
            mapping[e] = f
            used.add(f)
            if extend(i + 1):
                return True
            del mapping[e]
            used.discard(f)
        return False

    return dict(mapping) if extend(0) else None


def pes_isomorphic(E1: PrimeEventStructure, E2: PrimeEventStructure, cap: int = ISO_CAP) -> Optional[dict]:
    """A bijection preserving causality and conflict both ways, or ``None``."""
    return _iso_search(E1, E2, frozenset(), frozenset(), cap)


def polarized_isomorphic(
    P1: PolarizedEventStructure, P2: PolarizedEventStructure, cap: int = ISO_CAP
) -> Optional[dict]:
    return _iso_search(P1.pes, P2.pes, P1.negative, P2.negative, cap)


def is_pes_isomorphism(E1, E2, phi: Mapping[str, str]) -> bool:
    """Whether ``phi`` is a bijection ``E1 -> E2`` preserving and reflecting both relations."""
    if set(phi) != set(E1.events) or set(phi.values()) != set(E2.events) or len(set(phi.values())) != len(phi):
        return False
    image_leq = {(phi[a], phi[b]) for a, b in E1.leq}
    image_con = {(phi[a], phi[b]) for a, b in E1.conflict}
    return image_leq == set(E2.leq) and image_con == set(E2.conflict)


def is_polarized_isomorphism(P1, P2, phi: Mapping[str, str]) -> bool:
    if not is_pes_isomorphism(P1.pes, P2.pes, phi):
        return False
    return {phi[e] for e in P1.negative} == set(P2.negative)
