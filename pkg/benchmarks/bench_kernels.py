"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Times three workloads on four-event universes: the stable-family filter
over all 2^15 rooted families, stability witnesses for every stable family,
and complete primes for every stable family. Results must agree exactly.
"""

from __future__ import annotations

import argparse
import timeit

from revconc import _kernels_py as py
from revconc import kernels
from revconc.oracle import Kind, GeneratorSpec, _subset_table, enumerate_structures


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if kernels.compiled is None:
        raise SystemExit("compiled extension not built; run `make ext` first")
    c = kernels.compiled

    table = _subset_table(tuple("abcd"))
    families = [C.masks for C in enumerate_structures(GeneratorSpec(4, Kind.STABLE_ONLY))]
    workloads = {
        "stable_family_codes": lambda m: m.stable_family_codes(table),
        "stability_witnesses": lambda m: [m.stability_witnesses(f) for f in families],
        "complete_prime_indices": lambda m: [m.complete_prime_indices(f) for f in families],
    }
    print(f"{'workload':<24} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, work in workloads.items():
        assert work(py) == work(c), f"{name}: backends disagree"
        tp = min(timeit.repeat(lambda: work(py), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: work(c), number=1, repeat=args.repeat))
        print(f"{name:<24} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
