"""Classical and symmetric residuation, orbits and transition systems."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import DomainError, PreconditionError, ResourceError
from .structures import (
    ConfigurationStructure,
    PointedConfigurationStructure,
    compatible,
    config_key,
    render,
)

DEFAULT_STATE_CAP = 10_000

Structure = Union[ConfigurationStructure, PointedConfigurationStructure]


def _pivot(C: ConfigurationStructure, x: Iterable[str]) -> frozenset:
    x = frozenset(x)
    if x not in C.configs:
        raise DomainError(f"not a configuration: {render(x)}")
    return x


def classical_residual(C: ConfigurationStructure, x: Iterable[str]) -> ConfigurationStructure:
    """What remains reachable after ``x``: supersets of ``x`` with ``x`` removed."""
    x = _pivot(C, x)
    return ConfigurationStructure(C.events, frozenset(y - x for y in C.configs if x <= y))


def symmetric_residual(C: ConfigurationStructure, x: Iterable[str]) -> ConfigurationStructure:
    """Every configuration ``y`` replaced by ``y ^ x``."""
    x = _pivot(C, x)
    return ConfigurationStructure(C.events, frozenset(y ^ x for y in C.configs))


def pointed_residual(P: PointedConfigurationStructure, y: Iterable[str]) -> PointedConfigurationStructure:
    """Symmetric residual of the base, with the referential moved to ``y ^ referential``."""
    y = _pivot(P.base, y)
    return PointedConfigurationStructure(symmetric_residual(P.base, y), y ^ P.referential)


def residuate(S: Structure, x: Iterable[str]) -> Structure:
    """Symmetric residuation of a plain or pointed structure."""
    if isinstance(S, PointedConfigurationStructure):
        return pointed_residual(S, x)
    return symmetric_residual(S, x)


@dataclass(frozen=True)
class Orbit:
    """Every ``(x, x ⊙ origin)`` pair, ``x`` ranging over the origin's configurations.

    ``pairs`` is in canonical order of ``x``; members are compared by exact
    equality, so a fixed point shows up as one member carrying several tags.
    """

    origin: Structure
    pairs: tuple

    @property
    def members(self) -> tuple:
        seen, out = set(), []
        for _, member in self.pairs:
            if member not in seen:
                seen.add(member)
                out.append(member)
        return tuple(out)

    def tags_of(self, member: Structure) -> frozenset:
        return frozenset(tag for tag, m in self.pairs if m == member)

    def member_for(self, tag: Iterable[str]) -> Structure:
        tag = frozenset(tag)
        for t, m in self.pairs:
            if t == tag:
                return m
        raise PreconditionError(f"{render(tag)} is not a configuration of the orbit origin")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, S) -> bool:
        return any(m == S for _, m in self.pairs)

    @property
    def free(self) -> bool:
        return len(self.members) == len(self.pairs)


def orbit(S: Structure) -> Orbit:
    base = S.base if isinstance(S, PointedConfigurationStructure) else S
    return Orbit(S, tuple((x, residuate(S, x)) for x in base.sorted_configs))


def same_orbit(C1: ConfigurationStructure, C2: ConfigurationStructure) -> bool:
    if C1.events != C2.events:
        raise PreconditionError("orbit comparison needs structures over the same universe")
    return C2 in orbit(C1)


def reachable_residuals(C: ConfigurationStructure) -> frozenset:
    """Distinct classical residuals ``x · C`` over the configurations ``x`` of ``C``."""
    return frozenset(classical_residual(C, x) for x in C.configs)


@dataclass(frozen=True)
class TransitionSystem:
    """States are numbered in discovery order; state ``initial`` is the start."""

    mode: str
    states: tuple
    transitions: tuple
    initial: int = 0

    def outgoing(self, state: int) -> list:
        return [t for t in self.transitions if t[0] == state]

    def target(self, state: int, label: Iterable[str]):
        label = frozenset(label)
        for s, lab, d in self.transitions:
            if s == state and lab == label:
                return d
        return None


def build_lts(C0: Structure, mode: str = "classical", cap: int = DEFAULT_STATE_CAP) -> TransitionSystem:
    """Explore residuation from ``C0``.

    ``classical``: states are distinct classical residuals, ``C ->x x·C``.
    ``reversible``: states are pointed structures, ``P ->y y ⊙ P``, starting
    from the initial pointing of ``C0``.
    """
    if mode == "classical":
        if isinstance(C0, PointedConfigurationStructure):
            C0 = C0.base
        start = C0
        step = classical_residual
        configs_of = lambda S: S.sorted_configs  # noqa: E731
    elif mode == "reversible":
        if isinstance(C0, PointedConfigurationStructure):
            if not C0.initial:
                raise DomainError("reversible exploration starts from an initial pointed structure")
            start = C0
        else:
            start = PointedConfigurationStructure(C0, frozenset())
        step = pointed_residual
        configs_of = lambda S: S.base.sorted_configs  # noqa: E731
    else:
        raise ValueError(f"unknown mode {mode!r}")

    ids = {start: 0}
    states = [start]
    transitions = []
    queue = deque([start])
    while queue:
        S = queue.popleft()
        src = ids[S]
        for x in configs_of(S):
            T = step(S, x)
            if T not in ids:
                if len(states) >= cap:
                    raise ResourceError(f"transition system exceeds the cap of {cap} states")
                ids[T] = len(states)
                states.append(T)
                queue.append(T)
            transitions.append((src, x, ids[T]))
    transitions.sort(key=lambda t: (t[0], config_key(t[1]), t[2]))
    return TransitionSystem(mode, tuple(states), tuple(transitions), 0)


class TransitionRelation(enum.Enum):
    CONCURRENT = "concurrent"
    CONFLICTING = "conflicting"


def classify_transitions(T: TransitionSystem, t1: tuple, t2: tuple) -> TransitionRelation:
    """Concurrent iff the two labels are compatible in the common source state."""
    for t in (t1, t2):
        if (t[0], frozenset(t[1]), t[2]) not in set(T.transitions):
            raise PreconditionError(f"{t!r} is not a transition of the system")
    if t1[0] != t2[0]:
        raise PreconditionError("transitions are not co-initial")
    S = T.states[t1[0]]
    base = S.base if isinstance(S, PointedConfigurationStructure) else S
    if compatible(base, t1[1], t2[1]):
        return TransitionRelation.CONCURRENT
    return TransitionRelation.CONFLICTING
