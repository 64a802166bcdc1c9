"""Stability axioms, domain-theoretic predicates and prime configurations.

The empty configuration is never reported as a complete prime: it would be
one vacuously under the quantifier reading, but it has no immediate
predecessor and must not become an event of the derived event structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import kernels
from .errors import DomainError, IntegrityError, PreconditionError, ResourceError
from .structures import ConfigurationStructure, render, sort_configs

AXIOMS = ("Rooted", "Connected", "BoundedUnionClosed", "IntersectionClosed", "Coherent")

QUANTIFIER_CAP = 24


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    witness: tuple = ()
    missing: Optional[frozenset] = None

    def describe(self) -> str:
        if self.passed:
            return f"{self.axiom}: pass"
        parts = ", ".join(render(w) for w in self.witness)
        tail = f"; missing {render(self.missing)}" if self.missing is not None else ""
        return f"{self.axiom}: FAIL (witness {parts or '-'}{tail})"


@dataclass(frozen=True)
class StabilityReport:
    verdicts: tuple

    @property
    def stable(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failed(self) -> tuple:
        return tuple(v.axiom for v in self.verdicts if not v.passed)

    def __getitem__(self, axiom: str) -> AxiomVerdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)

    def lines(self) -> list[str]:
        return [v.describe() for v in self.verdicts]


def stability_report(C: ConfigurationStructure) -> StabilityReport:
    """Check the five stability axioms, recording the first counterexample of each.

    Coherence is evaluated on triples whose pairwise unions are themselves
    configurations. When unions are closed under bounds this is the same as
    asking for pairwise bounds, so stability as a whole is unaffected, but a
    missing bounded union is reported once (under ``BoundedUnionClosed``)
    rather than a second time as a degenerate coherence failure.
    """
    cached = C.memo.get("stability")
    if cached is not None:
        return cached
    cs = C.sorted_configs
    conn, bu, inter, coh = kernels.stability_witnesses(C.masks)
    verdicts = [AxiomVerdict("Rooted", frozenset() in C.configs, (), None if frozenset() in C.configs else frozenset())]
    if conn is None:
        verdicts.append(AxiomVerdict("Connected", True))
    else:
        verdicts.append(AxiomVerdict("Connected", False, (cs[conn[0]],)))
    if bu is None:
        verdicts.append(AxiomVerdict("BoundedUnionClosed", True))
    else:
        x, y, z = (cs[i] for i in bu)
        verdicts.append(AxiomVerdict("BoundedUnionClosed", False, (x, y, z), x | y))
    if inter is None:
        verdicts.append(AxiomVerdict("IntersectionClosed", True))
    else:
        x, y = (cs[i] for i in inter)
        verdicts.append(AxiomVerdict("IntersectionClosed", False, (x, y), x & y))
    if coh is None:
        verdicts.append(AxiomVerdict("Coherent", True))
    else:
        x, y, z = (cs[i] for i in coh)
        verdicts.append(AxiomVerdict("Coherent", False, (x, y, z), x | y | z))
    report = StabilityReport(tuple(verdicts))
    C.memo["stability"] = report
    return report


def is_stable(C: ConfigurationStructure) -> bool:
    cached = C.memo.get("stability")
    if cached is not None:
        return cached.stable
    return kernels.is_stable(C.masks)


def require_stable(C: ConfigurationStructure) -> None:
    if not is_stable(C):
        raise DomainError("configuration structure is not stable", stability_report(C))


def _check_cap(C: ConfigurationStructure, cap: int) -> None:
    if len(C.configs) > cap:
        raise ResourceError(f"quantifier evaluation capped at {cap} configurations (got {len(C.configs)})")


def _bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def _least_index(ub: int, sup) -> int:
    for u in _bits(ub):
        if sup[u] & ub == ub:
            return u
    return -1


def complete_primes(C: ConfigurationStructure, cap: int = QUANTIFIER_CAP) -> frozenset:
    """Non-empty complete primes of ``(configs, ⊆)``, by the literal quantifier."""
    cached = C.memo.get("primes")
    if cached is not None:
        return cached
    _check_cap(C, cap)
    cs = C.sorted_configs
    primes = frozenset(cs[i] for i in kernels.complete_prime_indices(C.masks))
    C.memo["primes"] = primes
    return primes


def compact_elements(C: ConfigurationStructure, cap: int = QUANTIFIER_CAP) -> frozenset:
    """Elements ``x`` such that every directed ``Y`` with ``x ⊆ ⊔Y`` has a member above ``x``.

    In a finite family a directed set is non-empty and contains its own least
    upper bound, which is then a member above ``x``; so every element is
    compact. The cap is still enforced to match the other quantifier checks.
    """
    _check_cap(C, cap)
    return C.configs


def primes_below(C: ConfigurationStructure, x: Iterable[str]) -> frozenset:
    x = C.require(x)
    return frozenset(p for p in complete_primes(C) if p <= x)


@dataclass(frozen=True)
class Check:
    passed: bool
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class DomainReport:
    compact: frozenset
    primes: frozenset
    finitary: Check
    coherent: Check
    prime_algebraic: Check

    @property
    def is_domain(self) -> bool:
        return bool(self.finitary and self.coherent and self.prime_algebraic)

    def lines(self) -> list[str]:
        def fmt(name, check):
            if check.passed:
                return f"{name}: pass"
            return f"{name}: FAIL (witness {', '.join(render(w) for w in check.witness)})"

        return [
            "compact: " + " ".join(render(x) for x in sort_configs(self.compact)),
            "primes: " + " ".join(render(x) for x in sort_configs(self.primes)),
            fmt("finitary", self.finitary),
            fmt("coherent", self.coherent),
            fmt("prime-algebraic", self.prime_algebraic),
        ]


def _coherence_witness(C: ConfigurationStructure) -> tuple:
    """First pairwise-consistent family lacking a least upper bound, or ``()``."""
    cs = C.sorted_configs
    sup = C.superset_bits
    m = len(cs)
    full = (1 << m) - 1
    cons = [0] * m
    for i in range(m):
        for j in range(m):
            if i != j and _least_index(sup[i] & sup[j], sup) >= 0:
                cons[i] |= 1 << j

    def walk(chosen: list, ub: int, allowed: int):
        for y in _bits(allowed):
            nub = ub & sup[y]
            chosen.append(y)
            if _least_index(nub, sup) < 0:
                return tuple(chosen)
            found = walk(chosen, nub, allowed & cons[y] & ~((2 << y) - 1))
            if found:
                return found
            chosen.pop()
        return None

    nonroot = full & ~sum(1 << i for i, x in enumerate(cs) if not x)
    found = walk([], full, nonroot)
    return tuple(cs[i] for i in found) if found else ()


def domain_report(C: ConfigurationStructure, cap: int = QUANTIFIER_CAP) -> DomainReport:
    """Finitary, coherent and prime-algebraic checks on ``(configs, ⊆)``."""
    compact = compact_elements(C, cap)
    primes = complete_primes(C, cap)
    coh = _coherence_witness(C)
    alg_bad = ()
    for x in C.sorted_configs:
        below = [p for p in primes if p <= x]
        if _lub(C, below) != x:
            alg_bad = (x,)
            break
    # finite families have finite down-sets, so finitary always holds
    return DomainReport(compact, primes, Check(True), Check(not coh, coh), Check(not alg_bad, alg_bad))


def _lub(C: ConfigurationStructure, Y) -> Optional[frozenset]:
    ub = [z for z in C.configs if all(y <= z for y in Y)]
    least = [u for u in ub if all(u <= z for z in ub)]
    return least[0] if least else None


def immediate_predecessors(C: ConfigurationStructure, p: Iterable[str]) -> list:
    """Maximal configurations strictly below ``p``, in canonical order."""
    p = C.require(p)
    below = [y for y in C.configs if y < p]
    return sort_configs(y for y in below if not any(y < z for z in below))


def pred(C: ConfigurationStructure, p: Iterable[str]) -> Optional[frozenset]:
    """The unique immediate predecessor of ``p``, or ``None`` when there are zero or several."""
    p = frozenset(p)
    if not p:
        raise DomainError("the root has no predecessor")
    maxima = immediate_predecessors(C, p)
    return maxima[0] if len(maxima) == 1 else None


def derivative(C: ConfigurationStructure, p: Iterable[str]) -> str:
    """The single event a prime adds over its immediate predecessor."""
    p = C.require(p)
    if p not in complete_primes(C):
        raise DomainError(f"{render(p)} is not a complete prime")
    q = pred(C, p)
    if q is None or len(p - q) != 1:
        raise DomainError(f"{render(p)} does not add exactly one event over a unique predecessor")
    (a,) = p - q
    return a


def derivatives(C: ConfigurationStructure) -> dict:
    """Map from each complete prime to its derivative (cached)."""
    cached = C.memo.get("derivatives")
    if cached is None:
        cached = {p: derivative(C, p) for p in sort_configs(complete_primes(C))}
        C.memo["derivatives"] = cached
    return cached


def introducer(C: ConfigurationStructure, a: str) -> Optional[frozenset]:
    """The prime whose derivative is ``a``; ``None`` when ``a`` occurs in no configuration."""
    if a not in C.events:
        raise PreconditionError(f"event {a!r} is not in the universe")
    found = [p for p, d in derivatives(C).items() if d == a]
    if len(found) > 1:
        raise IntegrityError(
            f"event {a!r} is introduced by several primes: {', '.join(render(p) for p in found)}"
        )
    return found[0] if found else None


def introducers(C: ConfigurationStructure) -> dict:
    """Map from event to its introducing prime, checking unicity."""
    out: dict = {}
    for p, a in derivatives(C).items():
        if a in out:
            raise IntegrityError(f"event {a!r} is introduced by {render(out[a])} and {render(p)}")
        out[a] = p
    return out
