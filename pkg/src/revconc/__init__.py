"""Reversible true-concurrency semantics on finite structures.

Configuration structures with classical and symmetric residuation, stability
and domain analysis, the constructions between stable structures and prime
event structures, and the switch operation on (polarized) event structures,
together with an exhaustive small-instance harness checking the theory.
"""

from .errors import (
    DomainError,
    IntegrityError,
    InvalidStructure,
    ParseError,
    PreconditionError,
    ResourceError,
    RevConcError,
    UsageError,
)
from .event_structures import (
    PolarizedEventStructure,
    PrimeEventStructure,
    RawEventStructure,
    RawPolarizedStructure,
    configurations,
    functor_C,
    functor_E,
    functor_E_pointed,
    pes_isomorphic,
    polarized_isomorphic,
    validate_pes,
)
from .kernels import BACKEND
from .residuation import (
    Orbit,
    TransitionSystem,
    build_lts,
    classical_residual,
    orbit,
    pointed_residual,
    reachable_residuals,
    residuate,
    same_orbit,
    symmetric_residual,
)
from .stability import (
    complete_primes,
    derivative,
    domain_report,
    introducer,
    is_stable,
    pred,
    primes_below,
    stability_report,
)
from .structures import (
    ConfigurationStructure,
    PointedConfigurationStructure,
    compatible,
    equivalent,
    glb,
    lub,
    validate,
)
from .switch import (
    adequacy_check,
    classify_effect,
    polarity_adequacy_check,
    residuation_map,
    switch_pes,
    switch_polarized,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConfigurationStructure",
    "DomainError",
    "IntegrityError",
    "InvalidStructure",
    "Orbit",
    "ParseError",
    "PointedConfigurationStructure",
    "PolarizedEventStructure",
    "PreconditionError",
    "PrimeEventStructure",
    "RawEventStructure",
    "RawPolarizedStructure",
    "ResourceError",
    "RevConcError",
    "TransitionSystem",
    "UsageError",
    "adequacy_check",
    "build_lts",
    "classical_residual",
    "classify_effect",
    "compatible",
    "complete_primes",
    "configurations",
    "derivative",
    "domain_report",
    "equivalent",
    "functor_C",
    "functor_E",
    "functor_E_pointed",
    "glb",
    "introducer",
    "is_stable",
    "lub",
    "orbit",
    "pes_isomorphic",
    "pointed_residual",
    "polarity_adequacy_check",
    "polarized_isomorphic",
    "pred",
    "primes_below",
    "reachable_residuals",
    "residuate",
    "residuation_map",
    "same_orbit",
    "stability_report",
    "switch_pes",
    "switch_polarized",
    "symmetric_residual",
    "validate",
    "validate_pes",
]
