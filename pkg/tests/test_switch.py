import pytest
from hypothesis import given

from conftest import C0, HEREDITY, HEREDITY_CS, CROSSED, cs, pes, pointed, stable, with_config
from revconc.errors import DomainError
from revconc.event_structures import (
    PolarizedEventStructure,
    functor_C,
    pes_violations,
    polarized_violations,
)
from revconc.stability import complete_primes
from revconc.structures import PointedConfigurationStructure, render
from revconc.switch import (
    EffectTag,
    adequacy_check,
    classify_effect,
    polarity_adequacy_check,
    residuation_map,
    switch_pes,
    switch_polarized,
)

f = frozenset
CHAIN = cs("ab", "", "a", "ab")


def strict(raw):
    return {(a, b) for a, b in raw.leq if a != b}


class TestResiduationMap:
    def test_crossed(self):
        sigma = residuation_map(CROSSED, "a")
        assert [(render(p), render(q)) for p, q in sigma.rows()] == [
            ("{a}", "{a}"),
            ("{b}", "{b}"),
            ("{a,c}", "{c}"),
            ("{b,d}", "{a,b,d}"),
        ]
        assert sigma("ac") == f("c")
        assert sigma.event_map()["{b,d}"] == "{a,b,d}"

    def test_identity(self):
        sigma = residuation_map(HEREDITY_CS, "")
        assert all(p == q for p, q in sigma.rows())

    def test_unstable_source(self):
        with pytest.raises(DomainError):
            residuation_map(C0, "a")


class TestEffects:
    def test_flip_cause(self):
        case = classify_effect(CHAIN, "ab", "a", "ab")
        assert case.tag is EffectTag.FLIP_CAUSE and case.conclusion_holds
        assert case.describe() == "FlipCause ({a}, {a,b}): conclusion holds"

    def test_preserve_cause(self):
        assert classify_effect(CHAIN, "", "a", "ab").tag is EffectTag.PRESERVE_CAUSE

    def test_cause_to_conflict(self):
        assert classify_effect(CHAIN, "a", "a", "ab").tag is EffectTag.CAUSE_TO_CONFLICT

    def test_orthogonal(self):
        case = classify_effect(HEREDITY_CS, "", "a", "b")
        assert case.tag is EffectTag.PRESERVE_ORT and case.conclusion_holds

    def test_conflict(self):
        assert classify_effect(HEREDITY_CS, "", "a", "bc").tag is EffectTag.PRESERVE_CONFLICT
        case = classify_effect(HEREDITY_CS, "a", "a", "bc")
        assert case.tag is EffectTag.CONFLICT_TO_CAUSE and case.pair == (f("a"), f("bc"))

    def test_orientation_is_found(self):
        case = classify_effect(HEREDITY_CS, "a", "bc", "a")
        assert case.pair == (f("a"), f("bc"))

    def test_needs_distinct_primes(self):
        with pytest.raises(DomainError):
            classify_effect(HEREDITY_CS, "", "a", "a")
        with pytest.raises(DomainError):
            classify_effect(HEREDITY_CS, "", "a", "ab")

    def test_cause_leaving_x(self):
        case = classify_effect(HEREDITY_CS, "ab", "b", "bc")
        assert case.tag is EffectTag.CAUSE_TO_CONFLICT and case.conclusion_holds


class TestSwitch:
    def test_heredity_on_b(self):
        out = switch_pes(HEREDITY, "b")
        assert strict(out) == set()
        assert out.conflict == {("a", "c"), ("c", "a"), ("b", "c"), ("c", "b")}
        assert pes_violations(out) == []

    def test_heredity_on_bc(self):
        out = switch_pes(HEREDITY, "bc")
        assert strict(out) == {("c", "b"), ("c", "a")}
        assert out.conflict == set()

    def test_empty_switch_is_identity(self):
        out = switch_pes(HEREDITY, "")
        assert (out.leq, out.conflict) == (HEREDITY.leq, HEREDITY.conflict)

    def test_not_a_configuration(self):
        with pytest.raises(DomainError):
            switch_pes(HEREDITY, "c")

    def test_polarized(self):
        P = PolarizedEventStructure(HEREDITY, f())
        out = switch_polarized(P, "b")
        assert out.negative == {"b"}
        assert polarized_violations(out) == []


class TestAdequacy:
    @pytest.mark.parametrize("x", ["", "a", "b", "ab", "bc"])
    def test_heredity(self, x):
        result = adequacy_check(HEREDITY_CS, x)
        assert result and result.message == "isomorphic via the residuation map"

    def test_crossed(self):
        for x in CROSSED.sorted_configs:
            assert adequacy_check(CROSSED, x)

    def test_foreign_configuration(self):
        with pytest.raises(DomainError):
            adequacy_check(HEREDITY_CS, "c")

    def test_polarized(self):
        P = PointedConfigurationStructure(HEREDITY_CS, f("b"))
        for x in HEREDITY_CS.sorted_configs:
            assert polarity_adequacy_check(P, x)


@given(pes())
def test_polarized_switch_marks_x_negative(E):
    P = PolarizedEventStructure(E, f())
    for X in functor_C(E).sorted_configs:
        once = switch_polarized(P, X)
        assert polarized_violations(once) == []
        assert once.negative == X


@given(pes())
def test_switch_preserves_validity(E):
    for X in functor_C(E).configs:
        assert pes_violations(switch_pes(E, X)) == []


@given(with_config(stable()))
def test_adequacy(arg):
    C, x = arg
    assert adequacy_check(C, x)


@given(pointed(stable()))
def test_polarity_adequacy(P):
    for x in P.base.sorted_configs:
        assert polarity_adequacy_check(P, x)


@given(with_config(stable()))
def test_effect_cases(arg):
    C, x = arg
    sigma = residuation_map(C, x)
    primes = sorted(complete_primes(C), key=lambda p: (len(p), sorted(p)))
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            assert classify_effect(C, x, p, q, sigma).conclusion_holds
