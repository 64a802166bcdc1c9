"""The switch operation, the residuation map and the adequacy checks.

Switching an event structure along a configuration ``X`` reverses causality
inside ``X``, turns causality leaving ``X`` into conflict and conflict leaving
``X`` into causality, and leaves everything outside ``X`` alone. The checks
here compare that syntactic operation with symmetric residuation of the
corresponding configuration structure.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import DomainError, IntegrityError, InvalidStructure
from .event_structures import (
    PolarizedEventStructure,
    PrimeEventStructure,
    RawEventStructure,
    RawPolarizedStructure,
    functor_E,
    is_pes_isomorphism,
    is_polarized_isomorphism,
    pes_isomorphic,
    pes_violations,
    polarized_isomorphic,
    polarized_violations,
)
from .residuation import symmetric_residual
from .stability import complete_primes, derivatives, introducers, is_stable, require_stable
from .structures import (
    ConfigurationStructure,
    PointedConfigurationStructure,
    compatible,
    orthogonal,
    render,
    sort_configs,
)


@dataclass(frozen=True)
class ResiduationMap:
    """Derivative-preserving bijection from the primes of ``source`` to those of ``pivot ⊙ source``."""

    source: ConfigurationStructure
    pivot: frozenset
    target: ConfigurationStructure
    mapping: dict = field(hash=False, compare=False)

    def __call__(self, p: Iterable[str]) -> frozenset:
        return self.mapping[frozenset(p)]

    def rows(self) -> list[tuple]:
        return [(p, self.mapping[p]) for p in sort_configs(self.mapping)]

    def event_map(self) -> dict:
        """The same bijection on prime-named events."""
        return {render(p): render(q) for p, q in self.mapping.items()}


def _introducers_or_fail(D: ConfigurationStructure, x: frozenset) -> dict:
    try:
        return introducers(D)
    except DomainError as exc:
        raise IntegrityError(f"residual after {render(x)} has no derivative-preserving primes: {exc}") from exc


def residuation_map(C: ConfigurationStructure, x: Iterable[str], target: Optional[ConfigurationStructure] = None) -> ResiduationMap:
    """Match each prime of ``C`` with the prime of ``x ⊙ C`` introducing the same event."""
    require_stable(C)
    x = frozenset(x)
    D = target if target is not None else symmetric_residual(C, x)
    intro = _introducers_or_fail(D, x)
    mapping = {}
    for p, a in derivatives(C).items():
        q = intro.get(a)
        if q is None:
            raise IntegrityError(f"no prime of the residual after {render(x)} introduces {a!r}")
        mapping[p] = q
    if len(set(mapping.values())) != len(mapping) or len(mapping) != len(complete_primes(D)):
        raise IntegrityError(f"residuation map after {render(x)} is not a bijection")
    return ResiduationMap(C, x, D, mapping)


class EffectTag(enum.Enum):
    PRESERVE_ORT = "PreserveOrt"
    FLIP_CAUSE = "FlipCause"
    PRESERVE_CAUSE = "PreserveCause"
    CAUSE_TO_CONFLICT = "CauseToConflict"
    CONFLICT_TO_CAUSE = "ConflictToCause"
    PRESERVE_CONFLICT = "PreserveConflict"


@dataclass(frozen=True)
class EffectCase:
    tag: EffectTag
    pair: tuple
    conclusion_holds: bool

    def describe(self) -> str:
        p, q = self.pair
        verdict = "holds" if self.conclusion_holds else "FAILS"
        return f"{self.tag.value} ({render(p)}, {render(q)}): conclusion {verdict}"


def _premises(C: ConfigurationStructure, x: frozenset, p: frozenset, q: frozenset) -> list:
    """Premises that hold for the ordered pair ``(p, q)``."""
    out = []
    if orthogonal(C, p, q):
        out.append(EffectTag.PRESERVE_ORT)
    if p <= q:
        if q <= x:
            out.append(EffectTag.FLIP_CAUSE)
        if not p <= x and not q <= x:
            out.append(EffectTag.PRESERVE_CAUSE)
        if p <= x and not q <= x:
            out.append(EffectTag.CAUSE_TO_CONFLICT)
    if not compatible(C, p, q):
        if p <= x:
            out.append(EffectTag.CONFLICT_TO_CAUSE)
        if not p <= x and not q <= x:
            out.append(EffectTag.PRESERVE_CONFLICT)
    return out


def _conclusion(tag: EffectTag, D: ConfigurationStructure, sp: frozenset, sq: frozenset) -> bool:
    if tag is EffectTag.PRESERVE_ORT:
        return orthogonal(D, sp, sq)
    if tag is EffectTag.FLIP_CAUSE:
        return sq <= sp
    if tag in (EffectTag.PRESERVE_CAUSE, EffectTag.CONFLICT_TO_CAUSE):
        return sp <= sq
    return not compatible(D, sp, sq)


def classify_effect(
    C: ConfigurationStructure,
    x: Iterable[str],
    p: Iterable[str],
    q: Iterable[str],
    sigma: Optional[ResiduationMap] = None,
) -> EffectCase:
    """Find the single premise that applies to ``{p, q}`` and evaluate its conclusion after ``x``."""
    x, p, q = frozenset(x), frozenset(p), frozenset(q)
    if sigma is None:
        sigma = residuation_map(C, x)
    primes = complete_primes(C)
    if p == q or p not in primes or q not in primes:
        raise DomainError("effect classification needs two distinct complete primes")
    found = [(tag, (p, q)) for tag in _premises(C, x, p, q)]
    found += [(tag, (q, p)) for tag in _premises(C, x, q, p)]
    tags = {tag for tag, _ in found}
    if len(tags) != 1:
        names = ", ".join(sorted(t.value for t in tags)) or "none"
        raise IntegrityError(f"premises applying to ({render(p)}, {render(q)}) under {render(x)}: {names}")
    tag, (a, b) = found[0]
    holds = _conclusion(tag, sigma.target, sigma(a), sigma(b))
    return EffectCase(tag, (a, b), holds)


def switch_pes(E: PrimeEventStructure, X: Iterable[str]) -> RawEventStructure:
    """Switch ``E`` along the configuration ``X``; the result is not validated."""
    X = frozenset(X)
    if not E.is_configuration(X):
        raise DomainError(f"{render(X)} is not a configuration of the event structure")
    leq, conflict = set(), set()
    for a in E.events:
        for b in E.events:
            inside = a in X and b in X
            outside = a not in X and b not in X
            if ((a, b) in E.leq and outside) or ((b, a) in E.leq and inside) or ((a, b) in E.conflict and a in X):
                leq.add((a, b))
            if ((a, b) in E.conflict and outside) or ((a, b) in E.leq and a in X and b not in X):
                conflict.add((a, b))
                conflict.add((b, a))
    return RawEventStructure(E.events, frozenset(leq), frozenset(conflict))


def switch_polarized(P: PolarizedEventStructure, X: Iterable[str]) -> RawPolarizedStructure:
    """Switch the underlying structure and flip the polarity of every event of ``X``."""
    X = frozenset(X)
    return RawPolarizedStructure(switch_pes(P.pes, X), P.negative ^ X)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    message: str
    witness: Optional[dict] = None
    left: object = None
    right: object = None

    def __bool__(self) -> bool:
        return self.passed


def _down_primes(C: ConfigurationStructure, x: frozenset) -> frozenset:
    return frozenset(render(p) for p in complete_primes(C) if p <= x)


def adequacy_check(C: ConfigurationStructure, x: Iterable[str], sigma: Optional[ResiduationMap] = None) -> CheckResult:
    """Compare ``E(x ⊙ C)`` with the switch of ``E(C)`` along the primes below ``x``.

    Passes only when ``σ_x`` itself is an isomorphism between the two; a
    general search is run on failure so the report can say whether some
    other bijection would have worked.
    """
    require_stable(C)
    x = frozenset(x)
    if x not in C.configs:
        raise DomainError(f"not a configuration: {render(x)}")
    D = sigma.target if sigma is not None else symmetric_residual(C, x)
    if not is_stable(D):
        return CheckResult(False, f"residual after {render(x)} is not stable", right=D)
    sigma = sigma or residuation_map(C, x, D)
    left = functor_E(D)
    raw = switch_pes(functor_E(C), _down_primes(C, x))
    bad = pes_violations(raw)
    if bad:
        return CheckResult(False, "switched structure is not a prime event structure: " + "; ".join(map(str, bad)), left=left, right=raw)
    phi = sigma.event_map()
    if is_pes_isomorphism(raw, left, phi):
        return CheckResult(True, "isomorphic via the residuation map", phi, left, raw)
    other = pes_isomorphic(PrimeEventStructure(raw.events, raw.leq, raw.conflict), left)
    note = "another isomorphism exists" if other else "no isomorphism exists"
    return CheckResult(False, f"residuation map is not an isomorphism ({note})", other, left, raw)


def polarity_adequacy_check(
    P: PointedConfigurationStructure, x: Iterable[str], sigma: Optional[ResiduationMap] = None
) -> CheckResult:
    """Compare ``E(x ⊙ P)`` with the polarized switch of ``E(P)`` along the primes below ``x``."""
    C = P.base
    require_stable(C)
    x = frozenset(x)
    if x not in C.configs:
        raise DomainError(f"not a configuration: {render(x)}")
    D = sigma.target if sigma is not None else symmetric_residual(C, x)
    if not is_stable(D):
        return CheckResult(False, f"residual after {render(x)} is not stable", right=D)
    sigma = sigma or residuation_map(C, x, D)
    ref = x ^ P.referential
    try:
        left = PolarizedEventStructure(functor_E(D), frozenset(render(q) for q in complete_primes(D) if q <= ref))
    except InvalidStructure as exc:
        return CheckResult(False, f"residual polarity is not a configuration: {exc}")
    try:
        source = PolarizedEventStructure(
            functor_E(C), frozenset(render(p) for p in complete_primes(C) if p <= P.referential)
        )
    except InvalidStructure as exc:
        return CheckResult(False, f"source polarity is not a configuration: {exc}")
    raw = switch_polarized(source, _down_primes(C, x))
    bad = polarized_violations(raw)
    if bad:
        return CheckResult(False, "switched structure is not polarized: " + "; ".join(map(str, bad)), left=left, right=raw)
    phi = sigma.event_map()
    if is_polarized_isomorphism(raw, left, phi):
        return CheckResult(True, "isomorphic via the residuation map", phi, left, raw)
    certified = PolarizedEventStructure(PrimeEventStructure(raw.raw.events, raw.raw.leq, raw.raw.conflict), raw.negative)
    other = polarized_isomorphic(certified, left)
    note = "another isomorphism exists" if other else "no isomorphism exists"
    return CheckResult(False, f"residuation map is not an isomorphism ({note})", other, left, raw)

