"""Generators of small structures and the theorem harness.

Exhaustive enumeration covers universes of up to four events; five events
are reachable only by seeded sampling. Every theorem is a function from one
generated structure to a count of checked instances and a list of failures,
so a sweep can be cut into chunks and run on several processes, with the
chunks merged back in enumeration order.
"""

from __future__ import annotations

import enum
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator, Optional

from . import kernels
from .errors import IntegrityError, InvalidStructure, UsageError
from .event_structures import (
    PrimeEventStructure,
    causal_closure,
    derivative_relabeling,
    functor_C,
    functor_E,
    functor_E_pointed,
    is_pes_isomorphism,
    pes_isomorphic,
    pes_violations,
    configurations as pes_configurations,
)
from .io import serialize
from .residuation import classical_residual, pointed_residual, symmetric_residual
from .stability import (
    complete_primes,
    derivatives,
    immediate_predecessors,
    introducers,
    is_stable,
)
from .structures import (
    ConfigurationStructure,
    PointedConfigurationStructure,
    equivalent,
    render,
    sort_configs,
)
from .switch import (
    adequacy_check,
    classify_effect,
    polarity_adequacy_check,
    residuation_map,
    switch_pes,
)

EVENT_NAMES = "abcde"
EXHAUSTIVE_MAX = 4
DEFAULT_SAMPLES = 200


class Kind(enum.Enum):
    ALL_ROOTED = "all-rooted"
    STABLE_ONLY = "stable"
    ALL_PES = "pes"


@dataclass(frozen=True)
class GeneratorSpec:
    universe_size: int
    kind: Optional[Kind] = None
    seed: Optional[int] = None
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if not 1 <= self.universe_size <= 5:
            raise UsageError("universe size must be between 1 and 5")
        if self.seed is None and self.universe_size > EXHAUSTIVE_MAX:
            raise UsageError(f"exhaustive enumeration stops at {EXHAUSTIVE_MAX} events; pass a seed to sample")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        if self.samples < 1:
            raise UsageError("sample count must be positive")

    @property
    def sampling(self) -> bool:
        return self.seed is not None

    @property
    def events(self) -> tuple:
        return tuple(EVENT_NAMES[: self.universe_size])

    def describe(self) -> str:
        mode = f"seed {self.seed}, {self.samples} samples" if self.sampling else "exhaustive"
        kind = self.kind.value if self.kind else "default"
        return f"size {self.universe_size}, {kind}, {mode}"


def _subset_table(events: tuple) -> list[int]:
    """Non-empty subsets of the universe as masks, in canonical order."""
    n = len(events)
    return sorted(range(1, 1 << n), key=lambda m: (bin(m).count("1"), [i for i in range(n) if (m >> i) & 1]))


def _family(events: tuple, table: list[int], code: int) -> ConfigurationStructure:
    configs = [frozenset()]
    k = 0
    while code:
        if code & 1:
            m = table[k]
            configs.append(frozenset(events[i] for i in range(len(events)) if (m >> i) & 1))
        code >>= 1
        k += 1
    return ConfigurationStructure(frozenset(events), frozenset(configs))


def _random_pes(rng: random.Random, events: tuple) -> PrimeEventStructure:
    order = list(events)
    rng.shuffle(order)
    density = rng.random()
    causality = [(a, b) for i, a in enumerate(order) for b in order[i + 1 :] if rng.random() < density * 0.6]
    leq = causal_closure(frozenset(events), causality)
    conflict: set = set()
    candidates = [(a, b) for a, b in combinations(sorted(events), 2) if (a, b) not in leq and (b, a) not in leq]
    rng.shuffle(candidates)
    for a, b in candidates:
        if rng.random() >= density:
            continue
        grown = {(c, d) for c in events for d in events if (a, c) in leq and (b, d) in leq}
        grown |= {(d, c) for c, d in grown}
        if any(c == d or (c, d) in leq for c, d in grown):
            continue
        conflict |= grown
    return PrimeEventStructure(frozenset(events), frozenset(leq), frozenset(conflict))


def enumerate_structures(spec: GeneratorSpec) -> Iterator[ConfigurationStructure]:
    """Rooted families over the first ``universe_size`` letters.

    Exhaustively, family codes run over every subset of the non-empty
    subsets, bit ``k`` picking the ``k``-th in canonical order. Stable-only
    sampling draws a random event structure and takes its configurations.
    """
    kind = spec.kind or Kind.ALL_ROOTED
    if kind is Kind.ALL_PES:
        raise UsageError("use enumerate_pes for event structures")
    events = spec.events
    table = _subset_table(events)
    if not spec.sampling:
        if kind is Kind.STABLE_ONLY:
            codes = kernels.stable_family_codes(table)
        else:
            codes = range(1 << len(table))
        for code in codes:
            yield _family(events, table, code)
        return
    rng = random.Random(spec.seed)
    for _ in range(spec.samples):
        if kind is Kind.STABLE_ONLY:
            yield functor_C(_random_pes(rng, events))
        else:
            yield _family(events, table, rng.getrandbits(len(table)))


def _partial_orders(events: tuple) -> Iterator[frozenset]:
    pairs = [(a, b) for a in events for b in events if a != b]
    refl = {(e, e) for e in events}
    for code in range(1 << len(pairs)):
        strict = {pairs[k] for k in range(len(pairs)) if (code >> k) & 1}
        if any((b, a) in strict for a, b in strict):
            continue
        if any((a, d) not in strict for a, b in strict for c, d in strict if b == c):
            continue
        yield frozenset(strict | refl)


def enumerate_pes(spec: GeneratorSpec) -> Iterator[PrimeEventStructure]:
    """Every prime event structure over the universe, as relations (not up to isomorphism)."""
    events = spec.events
    if spec.sampling:
        rng = random.Random(spec.seed)
        for _ in range(spec.samples):
            yield _random_pes(rng, events)
        return
    for leq in _partial_orders(events):
        free = [(a, b) for a, b in combinations(events, 2) if (a, b) not in leq and (b, a) not in leq]
        for code in range(1 << len(free)):
            chosen = [free[k] for k in range(len(free)) if (code >> k) & 1]
            conflict = frozenset(chosen) | frozenset((b, a) for a, b in chosen)
            if all((a, c) in conflict for a, b in conflict for bb, c in leq if bb == b and c != b):
                yield PrimeEventStructure(frozenset(events), leq, conflict)


# Theorem checks: each maps one structure to (instances, failures).


@dataclass(frozen=True)
class Failure:
    fixture: str
    clause: str

    def describe(self) -> str:
        return f"{self.clause}\n  fixture: {self.fixture.strip()}"


def _fail(value, clause: str) -> Failure:
    return Failure(serialize(value), clause)


def _monoid_action(C):
    fails, n = [], 0
    if classical_residual(C, frozenset()) != C:
        fails.append(_fail(C, "empty residual is not the identity"))
    for y in C.sorted_configs:
        R = classical_residual(C, y)
        for x in R.sorted_configs:
            n += 1
            if classical_residual(R, x) != classical_residual(C, x | y):
                fails.append(_fail(C, f"x·(y·C) != (x∪y)·C for y={render(y)}, x={render(x)}"))
    return n, fails


def _group_action(C):
    fails, n = [], 0
    for x in C.sorted_configs:
        R = symmetric_residual(C, x)
        if symmetric_residual(R, x) != C:
            fails.append(_fail(C, f"residuation by {render(x)} is not an involution"))
        for y in R.sorted_configs:
            n += 1
            if symmetric_residual(R, y) != symmetric_residual(C, x ^ y):
                fails.append(_fail(C, f"y⊙(x⊙C) != (x△y)⊙C for x={render(x)}, y={render(y)}"))
    return n, fails


def _conservative_extension(C):
    fails = []
    for x in C.sorted_configs:
        if not classical_residual(C, x).configs <= symmetric_residual(C, x).configs:
            fails.append(_fail(C, f"x·C is not contained in x⊙C for x={render(x)}"))
    return len(C.configs), fails


def _free_action(C):
    fails = []
    for r in C.sorted_configs:
        P = PointedConfigurationStructure(C, r)
        images = [pointed_residual(P, y) for y in C.sorted_configs]
        if len(set(images)) != len(images):
            fails.append(_fail(P, f"pointed orbit of referential {render(r)} collapses"))
    return len(C.configs), fails


def _c_of_e_stable(E):
    C = functor_C(E)
    return 1, ([] if is_stable(C) else [_fail(E, "configurations are not stable")])


def _stable_orbits(C):
    fails = []
    for x in C.sorted_configs:
        if not is_stable(symmetric_residual(C, x)):
            fails.append(_fail(C, f"residual by {render(x)} is not stable"))
    return len(C.configs), fails


def _roundtrip_cs(C):
    occurring = frozenset().union(*C.configs)
    restricted = ConfigurationStructure(occurring, C.configs)
    back = functor_C(functor_E(C))
    fails = []
    if equivalent(back, restricted) is None:
        fails.append(_fail(C, "C(E(C)) is not equivalent to C"))
    delta = derivative_relabeling(C)
    relabeled = frozenset(frozenset(delta[e] for e in x) for x in back.configs)
    if relabeled != C.configs:
        fails.append(_fail(C, "relabeling C(E(C)) by derivatives does not give C"))
    return 1, fails


def _roundtrip_pes(E):
    C = functor_C(E)
    back = functor_E(C)
    fails = []
    delta = derivative_relabeling(C)
    if not is_pes_isomorphism(back, E, delta):
        fails.append(_fail(E, "derivative map is not an isomorphism E(C(E)) -> E"))
    elif pes_isomorphic(back, E) is None:
        fails.append(_fail(E, "isomorphism search disagrees with the derivative witness"))
    return 1, fails


def _unique_predecessor(C):
    primes = complete_primes(C)
    fails = []
    for p in C.sorted_configs:
        if not p:
            continue
        unique = len(immediate_predecessors(C, p)) == 1
        if (p in primes) != unique:
            fails.append(_fail(C, f"{render(p)}: prime={p in primes} but unique predecessor={unique}"))
    return len(C.configs) - 1, fails


def _event_introduction(C):
    delta = derivatives(C)
    fails, n = [], 0
    for x in C.sorted_configs:
        introduced = {a for p, a in delta.items() if p <= x}
        for a in sorted(C.events):
            n += 1
            if (a in x) != (a in introduced):
                fails.append(_fail(C, f"event {a} in {render(x)}: member={a in x}, introduced={a in introduced}"))
    return n, fails


def _introducer_unicity(C):
    try:
        intro = introducers(C)
    except IntegrityError as exc:
        return 1, [_fail(C, str(exc))]
    occurring = frozenset().union(*C.configs)
    if set(intro) != occurring:
        return 1, [_fail(C, "derivatives do not cover exactly the occurring events")]
    return 1, []


def _effect_cases(C):
    primes = sort_configs(complete_primes(C))
    fails, n = [], 0
    for x in C.sorted_configs:
        sigma = residuation_map(C, x)
        for p, q in combinations(primes, 2):
            n += 1
            try:
                case = classify_effect(C, x, p, q, sigma)
            except IntegrityError as exc:
                fails.append(_fail(C, f"x={render(x)}: {exc}"))
                continue
            if not case.conclusion_holds:
                D = serialize(sigma.target).strip()
                fails.append(_fail(C, f"x={render(x)}: {case.describe()}; residual {D}"))
    return n, fails


def _adequacy(C):
    fails = []
    for x in C.sorted_configs:
        result = adequacy_check(C, x)
        if not result.passed:
            fails.append(_fail(C, f"x={render(x)}: {result.message}"))
    return len(C.configs), fails


def _polarized_neg(C):
    fails = []
    for y in C.sorted_configs:
        try:
            functor_E_pointed(PointedConfigurationStructure(C, y))
        except InvalidStructure as exc:
            fails.append(_fail(PointedConfigurationStructure(C, y), str(exc)))
    return len(C.configs), fails


def _polarity_switch(C):
    fails, n = [], 0
    sigmas = {x: residuation_map(C, x) for x in C.sorted_configs}
    for y in C.sorted_configs:
        P = PointedConfigurationStructure(C, y)
        for x in C.sorted_configs:
            n += 1
            result = polarity_adequacy_check(P, x, sigmas[x])
            if not result.passed:
                fails.append(_fail(P, f"x={render(x)}: {result.message}"))
    return n, fails


def _raw_switch(E):
    fails, n = [], 0
    for X in pes_configurations(E):
        n += 1
        bad = pes_violations(switch_pes(E, X))
        if bad:
            fails.append(_fail(E, f"switch along {render(X)} breaks {bad[0]}"))
    return n, fails


@dataclass(frozen=True)
class Theorem:
    id: str
    statement: str
    domain: str  # "rooted", "stable", "pes" or "both"
    check: Callable
    pes_check: Optional[Callable] = None


THEOREMS = {
    t.id: t
    for t in [
        Theorem("monoid-action", "x·(y·C) = (x∪y)·C and ∅·C = C", "rooted", _monoid_action),
        Theorem("group-action", "y⊙(x⊙C) = (x△y)⊙C, an involution", "rooted", _group_action),
        Theorem("conservative-extension", "configs(x·C) ⊆ configs(x⊙C)", "rooted", _conservative_extension),
        Theorem("free-action", "pointed residuation acts freely", "rooted", _free_action),
        Theorem("c-of-e-stable", "configurations of an event structure are stable", "pes", None, _c_of_e_stable),
        Theorem("stable-orbits", "symmetric residuation preserves stability", "stable", _stable_orbits),
        Theorem("winskel-roundtrip", "C(E(C)) ≅ C and E(C(E)) ≅ E", "both", _roundtrip_cs, _roundtrip_pes),
        Theorem("unique-predecessor", "primes are exactly the configurations with one immediate predecessor", "stable", _unique_predecessor),
        Theorem("event-introduction", "a ∈ x iff some prime below x introduces a", "stable", _event_introduction),
        Theorem("introducer-unicity", "each occurring event has exactly one introducer", "stable", _introducer_unicity),
        Theorem("effect-cases", "exactly one effect premise applies and its conclusion holds", "stable", _effect_cases),
        Theorem("adequacy", "E(x⊙C) is isomorphic to the switch of E(C) along the primes below x", "stable", _adequacy),
        Theorem("polarized-neg", "negative primes of a pointed structure form a configuration", "stable", _polarized_neg),
        Theorem("polarity-switch", "polarized switch matches pointed residuation", "stable", _polarity_switch),
        Theorem("raw-switch", "switching an event structure along any configuration stays prime", "pes", None, _raw_switch),
    ]
}


@dataclass
class TheoremReport:
    theorem: str
    spec: GeneratorSpec
    structures: int = 0
    instances: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return (
            f"{self.theorem}: {len(self.failures)} failures / {self.instances} instances "
            f"({self.structures} structures; {self.spec.describe()}) in {self.seconds:.2f}s"
        )

    def merge(self, structures: int, instances: int, failures: list) -> None:
        self.structures += structures
        self.instances += instances
        self.failures.extend(failures)


def _streams(theorem: Theorem, spec: GeneratorSpec) -> list:
    """``(stream, items)`` pairs for a theorem, ``stream`` being ``"cs"`` or ``"pes"``."""
    kind = spec.kind
    cs_ok = theorem.domain in ("rooted", "stable", "both")
    pes_ok = theorem.domain in ("pes", "both")
    if kind is Kind.ALL_PES and not pes_ok:
        raise UsageError(f"{theorem.id} is stated over configuration structures, not event structures")
    if kind in (Kind.ALL_ROOTED, Kind.STABLE_ONLY) and not cs_ok:
        raise UsageError(f"{theorem.id} is stated over event structures")
    out = []
    if cs_ok and kind is not Kind.ALL_PES:
        if kind is None:
            kind = Kind.ALL_ROOTED if theorem.domain == "rooted" else Kind.STABLE_ONLY
        gen = GeneratorSpec(spec.universe_size, kind, spec.seed, spec.samples)
        items = list(enumerate_structures(gen))
        if theorem.domain in ("stable", "both"):
            items = [C for C in items if is_stable(C)]
        out.append(("cs", items))
    if pes_ok and (spec.kind is None or spec.kind is Kind.ALL_PES):
        gen = GeneratorSpec(spec.universe_size, Kind.ALL_PES, spec.seed, spec.samples)
        out.append(("pes", list(enumerate_pes(gen))))
    return out


def _run_chunk(args) -> tuple:
    theorem_id, which, items = args
    theorem = THEOREMS[theorem_id]
    check = theorem.pes_check if which == "pes" else theorem.check
    n, fails = 0, []
    for item in items:
        k, f = check(item)
        n += k
        fails.extend(f)
    return len(items), n, fails


def check_theorem(theorem_id: str, spec: GeneratorSpec, jobs: int = 1) -> TheoremReport:
    """Run one theorem over the structures ``spec`` generates.

    With ``jobs > 1`` the stream is split into contiguous chunks checked in
    worker processes; results are merged in chunk order, so the report is
    the same as a sequential run apart from wall-clock time.
    """
    theorem = THEOREMS.get(theorem_id)
    if theorem is None:
        raise UsageError(f"unknown theorem {theorem_id!r}; known: {', '.join(THEOREMS)}")
    if jobs < 1:
        raise UsageError("jobs must be positive")
    report = TheoremReport(theorem_id, spec)
    start = time.perf_counter()
    for which, items in _streams(theorem, spec):
        if jobs == 1 or len(items) < 2 * jobs:
            report.merge(*_run_chunk((theorem_id, which, items)))
            continue
        size = -(-len(items) // (jobs * 4))
        chunks = [(theorem_id, which, items[i : i + size]) for i in range(0, len(items), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(_run_chunk, chunks):
                report.merge(*result)
    report.seconds = time.perf_counter() - start
    return report


def check_all(spec_for: Callable[[int], GeneratorSpec], sizes, ids=None, jobs: int = 1) -> list[TheoremReport]:
    ids = list(ids or THEOREMS)
    return [check_theorem(t, spec_for(n), jobs) for t in ids for n in sizes]


def count_stable(n: int) -> int:
    return len(kernels.stable_family_codes(_subset_table(tuple(EVENT_NAMES[:n]))))

