"""The seven acceptance criteria, each timed against its budget.

Every criterion prints one line ``criterion N: PASS|FAIL (elapsed / budget)``
and the lines are repeated in the pytest terminal summary.
"""

import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from conftest import ACCEPTANCE, C0, C1, C2, FIXPOINT, all_families, all_pes
from revconc.event_structures import PolarizedEventStructure, functor_C
from revconc.io import parse, serialize
from revconc.oracle import GeneratorSpec, Kind, check_theorem
from revconc.residuation import classical_residual, orbit
from revconc.stability import stability_report
from revconc.structures import PointedConfigurationStructure, compatible, lub

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "fixtures"))
import replay  # noqa: E402

f = frozenset
SWEEP = [
    "monoid-action",
    "group-action",
    "conservative-extension",
    "free-action",
    "c-of-e-stable",
    "stable-orbits",
    "winskel-roundtrip",
    "unique-predecessor",
    "event-introduction",
    "introducer-unicity",
    "effect-cases",
    "adequacy",
    "polarized-neg",
    "polarity-switch",
]
MAIN = ["stable-orbits", "adequacy", "effect-cases", "polarity-switch"]


@contextmanager
def criterion(n: int, budget: float):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < budget
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s / {budget:g}s)"
        ACCEPTANCE.append(line)
        print(line)
    assert elapsed < budget, f"criterion {n} took {elapsed:.1f}s, budget {budget:g}s"


def _no_failures(reports):
    bad = [r.summary() for r in reports if not r.passed]
    assert not bad, bad


def test_criterion_1_worked_examples_replay():
    with criterion(1, 1.0):
        assert replay.replay() == []
        # residuals after {b}: incompatible, independent, sequential
        assert not compatible(classical_residual(C0, "b"), "a", "c")
        assert lub(classical_residual(C1, "b"), [f("a"), f("c")]) == f("ac")
        seq = classical_residual(C2, "b")
        assert f("a") not in seq and f("ac") in seq


def test_criterion_2_stability_verdicts():
    with criterion(2, 1.0):
        for C, axiom, missing in [(C0, "Coherent", "abc"), (C1, "IntersectionClosed", "c"), (C2, "BoundedUnionClosed", "ab")]:
            report = stability_report(C)
            assert report.failed == (axiom,)
            assert report[axiom].missing == f(missing)


def test_criterion_3_sweep_up_to_three_events():
    with criterion(3, 60.0):
        reports = [check_theorem(tid, GeneratorSpec(n)) for tid in SWEEP for n in (1, 2, 3)]
        _no_failures(reports)
        assert sum(r.structures for r in reports if r.theorem == "monoid-action" and r.spec.universe_size == 3) == 128
        assert sum(r.structures for r in reports if r.theorem == "c-of-e-stable" and r.spec.universe_size == 3) == 41


@pytest.mark.slow
def test_criterion_4_main_theorems_at_four_events():
    with criterion(4, 900.0):
        first = [check_theorem(tid, GeneratorSpec(4), jobs=4) for tid in MAIN]
        _no_failures(first)
        again = check_theorem("effect-cases", GeneratorSpec(4), jobs=4)
        assert (again.instances, again.failures) == (first[2].instances, first[2].failures)


def test_criterion_5_roundtrips_up_to_four_events():
    with criterion(5, 60.0):
        reports = [check_theorem("winskel-roundtrip", GeneratorSpec(n)) for n in (1, 2, 3, 4)]
        _no_failures(reports)
        stable4 = check_theorem("winskel-roundtrip", GeneratorSpec(4, Kind.STABLE_ONLY))
        pes4 = check_theorem("winskel-roundtrip", GeneratorSpec(4, Kind.ALL_PES))
        assert (stable4.structures, pes4.structures) == (1109, 916)


def test_criterion_6_serialization_roundtrip():
    with criterion(6, 30.0):
        for n in (1, 2, 3):
            for C in all_families(n):
                assert parse(serialize(C)).value == C
                for x in C.sorted_configs:
                    P = PointedConfigurationStructure(C, x)
                    assert parse(serialize(P)).value == P
            for E in all_pes(n):
                back = parse(serialize(E)).value
                assert back == E and back.leq == E.leq
                for x in functor_C(E).sorted_configs:
                    P = PolarizedEventStructure(E, x)
                    assert parse(serialize(P)).value == P
        for path in sorted((ROOT / "fixtures").glob("*.*s")):
            text = path.read_text()
            assert serialize(parse(text)) == text, path.name


def test_criterion_7_freeness_cardinality():
    with criterion(7, 30.0):
        for n in (1, 2, 3):
            for C in all_families(n):
                for r in C.sorted_configs:
                    orb = orbit(PointedConfigurationStructure(C, r))
                    assert len(orb.members) == len(C.configs)
        unpointed = orbit(FIXPOINT)
        assert unpointed.member_for("b") == unpointed.member_for("")
        assert len(unpointed.members) < len(FIXPOINT.configs)
