import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import C0, C1, C2, FIXPOINT, EXCLUSIVE, SINGLE, cs, pointed, rooted, with_config
from revconc.errors import DomainError, PreconditionError, ResourceError
from revconc.residuation import (
    TransitionRelation,
    build_lts,
    classical_residual,
    classify_transitions,
    orbit,
    pointed_residual,
    reachable_residuals,
    residuate,
    same_orbit,
    symmetric_residual,
)
from revconc.structures import PointedConfigurationStructure, compatible, lub

f = frozenset


class TestClassical:
    def test_after_b(self):
        assert classical_residual(C2, "b") == cs("abc", "", "c", "ac")
        assert classical_residual(C0, "b") == cs("abc", "", "a", "c")
        assert classical_residual(C1, "b") == cs("abc", "", "a", "c", "ac")

    def test_residual_shapes_after_b(self):
        incompatible = classical_residual(C0, "b")
        assert not compatible(incompatible, "a", "c")
        independent = classical_residual(C1, "b")
        assert lub(independent, [f("a"), f("c")]) == f("ac")
        sequential = classical_residual(C2, "b")
        assert f("a") not in sequential and f("ac") in sequential

    def test_empty_residual_is_identity(self):
        assert classical_residual(C0, "") == C0

    def test_not_a_configuration(self):
        with pytest.raises(DomainError, match="not a configuration"):
            classical_residual(C0, "abc")

    def test_worked_example(self):
        assert classical_residual(EXCLUSIVE, "a") == cs("ab", "")


class TestSymmetric:
    def test_worked_example(self):
        assert symmetric_residual(EXCLUSIVE, "a") == cs("ab", "", "a", "ab")

    def test_orbit_identities(self):
        assert symmetric_residual(C0, "ab") == C1
        assert symmetric_residual(C0, "c") == C2

    def test_fixed_point(self):
        assert symmetric_residual(FIXPOINT, "b") == FIXPOINT

    def test_not_a_configuration(self):
        with pytest.raises(DomainError):
            symmetric_residual(C0, "abc")


class TestPointed:
    def test_referential_moves(self):
        P = PointedConfigurationStructure(FIXPOINT)
        Q = pointed_residual(P, "b")
        assert Q.base == symmetric_residual(FIXPOINT, "b")
        assert Q.referential == f("b")
        assert pointed_residual(Q, "b") == P
        assert pointed_residual(P, "") == P
        assert residuate(P, "b") == Q

    def test_return_to_origin(self):
        P = PointedConfigurationStructure(C0, f("ab"))
        Q = pointed_residual(P, "c")
        assert pointed_residual(Q, Q.referential).referential == f()


class TestOrbit:
    def test_c0(self):
        orb = orbit(C0)
        assert C1 in orb and C2 in orb
        assert orb.member_for("") == C0
        assert orb.free

    def test_collapse(self):
        orb = orbit(SINGLE)
        assert len(orb) == 1 and not orb.free

    def test_fixed_point_tags(self):
        orb = orbit(FIXPOINT)
        assert orb.tags_of(FIXPOINT) == {f(), f("b")}
        with pytest.raises(PreconditionError):
            orb.member_for("ac")

    def test_same_orbit(self):
        assert same_orbit(C0, C1) and same_orbit(C0, C2) and same_orbit(C0, C0)
        assert not same_orbit(SINGLE, cs("a", ""))
        with pytest.raises(PreconditionError):
            same_orbit(C0, SINGLE)

    def test_reachable_residuals(self):
        assert reachable_residuals(SINGLE) == {SINGLE, cs("a", "")}
        assert len(reachable_residuals(C0)) <= len(C0.configs)
        assert C0 in reachable_residuals(C0)


class TestLTS:
    def test_classical(self):
        T = build_lts(EXCLUSIVE)
        # the residuals after {a} and after {b} are both <{a,b},{∅}>
        assert len(T.states) == 2
        assert {lab for s, lab, d in T.outgoing(0)} == {f(), f("a"), f("b")}

    def test_reversible_from_fixed_point(self):
        T = build_lts(FIXPOINT, "reversible")
        assert len(T.states) == 6
        assert all(len(T.outgoing(s)) == 6 for s in range(6))

    def test_composition(self):
        T = build_lts(C2)
        for s, x, d in T.transitions:
            for s2, y, d2 in T.outgoing(d):
                assert T.target(s, x | y) == d2

    def test_cap(self):
        with pytest.raises(ResourceError):
            build_lts(C0, "reversible", cap=3)

    def test_reversible_needs_initial(self):
        with pytest.raises(DomainError):
            build_lts(PointedConfigurationStructure(C0, f("a")), "reversible")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            build_lts(C0, "sideways")

    def test_classify_transitions(self):
        T = build_lts(C0)
        t = {lab: (s, lab, d) for s, lab, d in T.outgoing(0)}
        assert classify_transitions(T, t[f("a")], t[f("b")]) is TransitionRelation.CONCURRENT
        assert classify_transitions(T, t[f("ab")], t[f("bc")]) is TransitionRelation.CONFLICTING
        assert classify_transitions(T, t[f("a")], t[f("a")]) is TransitionRelation.CONCURRENT


@given(with_config(rooted()))
def test_monoid_action(arg):
    C, y = arg
    R = classical_residual(C, y)
    for x in R.configs:
        assert classical_residual(R, x) == classical_residual(C, x | y)


@given(with_config(rooted()), st.data())
def test_group_action(arg, data):
    C, x = arg
    R = symmetric_residual(C, x)
    y = data.draw(st.sampled_from(R.sorted_configs))
    assert symmetric_residual(R, y) == symmetric_residual(C, x ^ y)
    assert symmetric_residual(R, x) == C
    assert len(R.configs) == len(C.configs)


@given(with_config(rooted()))
def test_conservative_extension(arg):
    C, x = arg
    assert classical_residual(C, x).configs <= symmetric_residual(C, x).configs


@given(pointed(rooted()))
def test_free_action(P):
    images = [pointed_residual(P, y) for y in P.base.sorted_configs]
    assert len(set(images)) == len(images)


@given(rooted(max_events=3), rooted(max_events=3), rooted(max_events=3))
def test_same_orbit_is_an_equivalence(A, B, C):
    if not (A.events == B.events == C.events):
        return
    assert same_orbit(A, A)
    assert same_orbit(A, B) == same_orbit(B, A)
    if same_orbit(A, B) and same_orbit(B, C):
        assert same_orbit(A, C)
