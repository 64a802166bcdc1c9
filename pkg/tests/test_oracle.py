import pytest

from conftest import all_families, all_pes, stable_families
from revconc.errors import UsageError
from revconc.event_structures import functor_C
from revconc.oracle import (
    THEOREMS,
    GeneratorSpec,
    Kind,
    check_theorem,
    count_stable,
    enumerate_pes,
    enumerate_structures,
)

def test_rooted_family_counts():
    assert [len(all_families(n)) for n in (1, 2, 3)] == [2, 8, 128]


def test_stable_family_counts():
    assert [count_stable(n) for n in (1, 2, 3, 4)] == [2, 7, 57, 1109]
    assert [len(stable_families(n)) for n in (1, 2, 3)] == [2, 7, 57]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pes_count_matches_stable_families_using_every_event(n):
    # a stable family in which every event occurs is C(E) for exactly one E
    full = tuple("abcd"[:n])
    covering = [C for C in enumerate_structures(GeneratorSpec(n, Kind.STABLE_ONLY)) if frozenset().union(*C.configs) == set(full)]
    pes = list(enumerate_pes(GeneratorSpec(n)))
    assert len(pes) == len(covering) == [1, 4, 41, 916][n - 1]
    assert {functor_C(E) for E in pes} == set(covering)


def test_sampling_is_deterministic():
    spec = GeneratorSpec(5, Kind.STABLE_ONLY, seed=7, samples=10)
    first = list(enumerate_structures(spec))
    assert first == list(enumerate_structures(spec))
    assert len(first) == 10
    other = list(enumerate_structures(GeneratorSpec(5, Kind.STABLE_ONLY, seed=8, samples=10)))
    assert first != other


def test_sampled_pes_are_valid():
    for E in enumerate_pes(GeneratorSpec(5, seed=3, samples=20)):
        assert len(E.events) == 5


def test_spec_validation():
    with pytest.raises(UsageError):
        GeneratorSpec(5)
    with pytest.raises(UsageError):
        GeneratorSpec(0)
    with pytest.raises(UsageError):
        check_theorem("no-such-theorem", GeneratorSpec(2))
    with pytest.raises(UsageError):
        check_theorem("c-of-e-stable", GeneratorSpec(2, Kind.STABLE_ONLY))


def test_summary_format():
    report = check_theorem("adequacy", GeneratorSpec(2))
    assert report.passed
    assert report.summary().startswith("adequacy: 0 failures / 18 instances (7 structures; size 2")


@pytest.mark.parametrize("tid", list(THEOREMS))
def test_every_theorem_holds_up_to_three_events(tid):
    for n in (1, 2, 3):
        report = check_theorem(tid, GeneratorSpec(n))
        assert report.passed, [f.clause for f in report.failures[:3]]
    assert report.instances > 0


def test_parallel_run_matches_serial():
    spec = GeneratorSpec(3)
    serial = check_theorem("group-action", spec)
    parallel = check_theorem("group-action", spec, jobs=2)
    assert (serial.structures, serial.instances, serial.failures) == (
        parallel.structures,
        parallel.instances,
        parallel.failures,
    )


def test_sampled_run():
    report = check_theorem("stable-orbits", GeneratorSpec(5, seed=1, samples=5))
    assert report.passed and report.structures == 5


@pytest.mark.slow
@pytest.mark.parametrize("tid", list(THEOREMS))
def test_every_theorem_holds_at_four_events(tid):
    assert check_theorem(tid, GeneratorSpec(4), jobs=4).passed
