from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import strategies as st

from revconc.event_structures import PrimeEventStructure
from revconc.oracle import GeneratorSpec, Kind, enumerate_pes, enumerate_structures
from revconc.structures import ConfigurationStructure, PointedConfigurationStructure, powerset

ABC = "abc"


def cs(events, *configs) -> ConfigurationStructure:
    return ConfigurationStructure.of(events, [frozenset(x) for x in configs])


def without(events, missing) -> ConfigurationStructure:
    return ConfigurationStructure.of(events, [x for x in powerset(events) if x != frozenset(missing)])


C0 = without(ABC, "abc")
C1 = without(ABC, "c")
C2 = without(ABC, "ab")
FIXPOINT = cs(ABC, "", "a", "b", "c", "ab", "bc")
CROSSED = cs("abcd", "", "a", "b", "ab", "ac", "bd")
EXCLUSIVE = cs("ab", "", "a", "b")
HEREDITY = PrimeEventStructure.from_relations(ABC, [("b", "c")], [("a", "c")])
HEREDITY_CS = cs(ABC, "", "a", "b", "ab", "bc")
SINGLE = cs("a", "", "a")


@pytest.fixture
def c0():
    return C0


@lru_cache(maxsize=None)
def stable_families(n: int) -> tuple:
    return tuple(enumerate_structures(GeneratorSpec(n, Kind.STABLE_ONLY)))


@lru_cache(maxsize=None)
def all_families(n: int) -> tuple:
    return tuple(enumerate_structures(GeneratorSpec(n)))


@lru_cache(maxsize=None)
def all_pes(n: int) -> tuple:
    return tuple(enumerate_pes(GeneratorSpec(n)))


@st.composite
def rooted(draw, max_events: int = 4):
    n = draw(st.integers(1, max_events))
    events = "abcd"[:n]
    subsets = [x for x in powerset(events) if x]
    chosen = draw(st.lists(st.sampled_from(subsets), unique=True, max_size=len(subsets)))
    return ConfigurationStructure.of(events, [frozenset()] + chosen)


@st.composite
def stable(draw, max_events: int = 4):
    n = draw(st.integers(1, max_events))
    return draw(st.sampled_from(stable_families(n)))


@st.composite
def pes(draw, max_events: int = 3):
    n = draw(st.integers(1, max_events))
    return draw(st.sampled_from(all_pes(n)))


@st.composite
def with_config(draw, structures):
    C = draw(structures)
    return C, draw(st.sampled_from(C.sorted_configs))


@st.composite
def pointed(draw, structures):
    C = draw(structures)
    return PointedConfigurationStructure(C, draw(st.sampled_from(C.sorted_configs)))


# criterion lines recorded by test_acceptance, echoed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
