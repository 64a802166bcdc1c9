"""Command-line interface.

Structures go to stdout in canonical form, reports go to stderr, so commands
compose in pipelines::

    revconc residuate --symmetric --by b fixtures/fixpoint.cs | revconc to-es - | revconc export-dot -

Exit codes: 0 success, 1 semantic failure, 2 usage or parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .errors import (
    DomainError,
    IntegrityError,
    InvalidStructure,
    ParseError,
    PreconditionError,
    ResourceError,
    UsageError,
)
from .event_structures import (
    PolarizedEventStructure,
    PrimeEventStructure,
    derivative_relabeling,
    functor_C,
    functor_E,
    functor_E_pointed,
    pes_isomorphic,
    polarized_isomorphic,
    pes_violations,
    polarized_violations,
    rename_pes,
)
from .io import StructureDocument, check_document, export_dot, parse, serialize, to_data
from .oracle import THEOREMS, GeneratorSpec, Kind, check_theorem
from .residuation import build_lts, classical_residual, orbit, residuate, same_orbit
from .stability import complete_primes, derivatives, domain_report, pred, stability_report
from .structures import (
    ConfigurationStructure,
    PointedConfigurationStructure,
    equivalent,
    render,
    split_events,
)
from .switch import residuation_map, switch_pes, switch_polarized

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, strict: bool = True) -> StructureDocument:
    return parse(_read(path), strict=strict)


def _out(value) -> None:
    sys.stdout.write(serialize(value))


def _err(*lines: str) -> None:
    for line in lines:
        print(line, file=sys.stderr)


def _cs(doc: StructureDocument) -> ConfigurationStructure:
    v = doc.value
    if isinstance(v, PointedConfigurationStructure):
        return v.base
    if isinstance(v, ConfigurationStructure):
        return v
    raise UsageError(f"expected a configuration structure, got kind {doc.kind!r}")


def _events(text: str) -> frozenset:
    return frozenset(split_events(text))


def cmd_validate(args) -> int:
    doc = _load(args.file, strict=False)
    report = check_document(doc)
    _err(*report.lines())
    if not report.valid:
        return EXIT_FAIL
    _out(doc.value)
    return EXIT_OK


def cmd_stable(args) -> int:
    C = _cs(_load(args.file))
    report = stability_report(C)
    _err(*report.lines())
    _err(*domain_report(C, args.cap or 24).lines())
    _err("stable" if report.stable else "not stable: " + ", ".join(report.failed))
    _out(C)
    return EXIT_OK if report.stable else EXIT_FAIL


def cmd_residuate(args) -> int:
    doc = _load(args.file)
    x = _events(args.by)
    if args.classical:
        _out(classical_residual(_cs(doc), x))
    else:
        if not isinstance(doc.value, (ConfigurationStructure, PointedConfigurationStructure)):
            raise UsageError(f"expected a configuration structure, got kind {doc.kind!r}")
        _out(residuate(doc.value, x))
    return EXIT_OK


def cmd_orbit(args) -> int:
    doc = _load(args.file)
    if not isinstance(doc.value, (ConfigurationStructure, PointedConfigurationStructure)):
        raise UsageError(f"expected a configuration structure, got kind {doc.kind!r}")
    orb = orbit(doc.value)
    members = orb.members
    for i, member in enumerate(members):
        tags = " ".join(render(t) for t, m in orb.pairs if m == member)
        _err(f"member {i}: tags {tags}")
        _out(member)
    _err(f"{len(members)} members from {len(orb.pairs)} configurations ({'free' if orb.free else 'not free'})")
    return EXIT_OK


def cmd_same_orbit(args) -> int:
    C1, C2 = _cs(_load(args.file1)), _cs(_load(args.file2))
    found = same_orbit(C1, C2)
    _err("same orbit" if found else "different orbits")
    return EXIT_OK if found else EXIT_FAIL


def cmd_lts(args) -> int:
    doc = _load(args.file)
    if not isinstance(doc.value, (ConfigurationStructure, PointedConfigurationStructure)):
        raise UsageError(f"expected a configuration structure, got kind {doc.kind!r}")
    T = build_lts(doc.value, args.mode, cap=args.cap or 10_000)
    data = {
        "kind": "lts",
        "mode": T.mode,
        "initial": T.initial,
        "states": [to_data(s) for s in T.states],
        "transitions": [[s, sorted(lab), d] for s, lab, d in T.transitions],
    }
    sys.stdout.write(json.dumps(data, separators=(",", ":"), ensure_ascii=False) + "\n")
    _err(f"{len(T.states)} states, {len(T.transitions)} transitions ({T.mode})")
    return EXIT_OK


def cmd_primes(args) -> int:
    C = _cs(_load(args.file))
    primes = complete_primes(C, args.cap or 24)
    delta = derivatives(C) if stability_report(C).stable else {}
    for p in sorted(primes, key=lambda x: (len(x), sorted(x))):
        q = pred(C, p)
        row = [render(p), "pred " + (render(q) if q is not None else "-")]
        if p in delta:
            row.append("derivative " + delta[p])
        print("\t".join(row))
    return EXIT_OK


def cmd_to_es(args) -> int:
    doc = _load(args.file)
    v = doc.value
    C = _cs(doc)
    complete_primes(C, args.cap or 24)
    if isinstance(v, PointedConfigurationStructure):
        result = functor_E_pointed(v)
        if args.relabel:
            names = derivative_relabeling(C)
            result = PolarizedEventStructure(rename_pes(result.pes, names), frozenset(names[e] for e in result.negative))
    else:
        result = functor_E(C)
        if args.relabel:
            result = rename_pes(result, derivative_relabeling(C))
    _out(result)
    return EXIT_OK


def cmd_to_cs(args) -> int:
    v = _load(args.file).value
    if isinstance(v, PolarizedEventStructure):
        _out(PointedConfigurationStructure(functor_C(v.pes), v.negative))
    elif isinstance(v, PrimeEventStructure):
        _out(functor_C(v))
    else:
        raise UsageError("expected an event structure")
    return EXIT_OK


def cmd_switch(args) -> int:
    v = _load(args.file).value
    X = _events(args.on)
    if isinstance(v, PolarizedEventStructure):
        raw = switch_polarized(v, X)
        bad = polarized_violations(raw)
    elif isinstance(v, PrimeEventStructure):
        raw = switch_pes(v, X)
        bad = pes_violations(raw)
    else:
        raise UsageError("expected an event structure")
    _out(raw)
    if bad:
        _err("switched structure is not valid:", *(f"  {b}" for b in bad))
        return EXIT_FAIL
    return EXIT_OK


def cmd_sigma(args) -> int:
    C = _cs(_load(args.file))
    sigma = residuation_map(C, _events(args.by))
    for p, q in sigma.rows():
        print(f"{render(p)}\t{render(q)}")
    return EXIT_OK


def cmd_iso(args) -> int:
    a, b = _load(args.file1).value, _load(args.file2).value
    cap = args.cap or 10
    if isinstance(a, PolarizedEventStructure) and isinstance(b, PolarizedEventStructure):
        phi = polarized_isomorphic(a, b, cap)
    elif isinstance(a, PrimeEventStructure) and isinstance(b, PrimeEventStructure):
        phi = pes_isomorphic(a, b, cap)
    elif isinstance(a, ConfigurationStructure) and isinstance(b, ConfigurationStructure):
        phi = equivalent(a, b, cap)
    else:
        raise UsageError("iso needs two documents of the same kind (cs, pes or polarized-pes)")
    if phi is None:
        _err("not isomorphic")
        return EXIT_FAIL
    for e in sorted(phi):
        print(f"{e}\t{phi[e]}")
    return EXIT_OK


def cmd_check(args) -> int:
    ids = list(THEOREMS) if args.theorem == "all" else [args.theorem]
    if args.theorem != "all" and args.theorem not in THEOREMS:
        raise UsageError(f"unknown theorem {args.theorem!r}; known: all, {', '.join(THEOREMS)}")
    kind = Kind(args.kind) if args.kind else None
    sizes = range(1, args.size + 1) if args.all_sizes else [args.size]
    failed = False
    for tid in ids:
        for n in sizes:
            spec = GeneratorSpec(n, kind, args.seed, args.samples)
            report = check_theorem(tid, spec, args.jobs)
            _err(report.summary())
            for f in report.failures:
                failed = True
                _err("  " + f.clause)
                sys.stdout.write(f.fixture)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_export_dot(args) -> int:
    doc = _load(args.file)
    sys.stdout.write(export_dot(doc, args.style))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=None, help="resource limit for the command's search")

    parser = argparse.ArgumentParser(prog="revconc", description="Reversible true-concurrency structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, files=("file",)):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for f in files:
            p.add_argument(f, help="input document, or - for stdin")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "report every violated invariant")
    add("stable", cmd_stable, "stability and domain report")
    p = add("residuate", cmd_residuate, "classical or symmetric residual")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--classical", action="store_true")
    mode.add_argument("--symmetric", action="store_true")
    p.add_argument("--by", required=True, help="comma-separated events of the configuration")
    add("orbit", cmd_orbit, "members of the symmetric-residuation orbit")
    add("same-orbit", cmd_same_orbit, "whether two structures share an orbit", ("file1", "file2"))
    p = add("lts", cmd_lts, "labelled transition system of residuals")
    p.add_argument("--mode", choices=["classical", "reversible"], default="classical")
    add("primes", cmd_primes, "complete primes with predecessors and derivatives")
    p = add("to-es", cmd_to_es, "event structure of a stable structure")
    p.add_argument("--relabel", action="store_true", help="name events by their derivative instead of their prime")
    add("to-cs", cmd_to_cs, "configurations of an event structure")
    p = add("switch", cmd_switch, "switch an event structure along a configuration")
    p.add_argument("--on", required=True, help="comma-separated events of the configuration")
    p = add("sigma", cmd_sigma, "residuation map as a table")
    p.add_argument("--by", required=True, help="comma-separated events of the configuration")
    add("iso", cmd_iso, "isomorphism between two documents", ("file1", "file2"))
    p = sub.add_parser("check", parents=[common], help="run the theorem harness")
    p.add_argument("--theorem", required=True, help="theorem id, or all")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--all-sizes", action="store_true", help="run every size from 1 to --size")
    p.add_argument("--kind", choices=[k.value for k in Kind], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check)
    p = add("export-dot", cmd_export_dot, "Graphviz rendering")
    p.add_argument("--style", choices=["hasse", "es"], default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError) as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE
    except ResourceError as exc:
        _err(f"resource limit: {exc}")
        return EXIT_RESOURCE
    except InvalidStructure as exc:
        _err(f"invalid: {exc}")
        return EXIT_FAIL
    except (DomainError, PreconditionError, IntegrityError) as exc:
        _err(f"error: {exc}")
        report = getattr(exc, "report", None)
        if report is not None and hasattr(report, "lines"):
            _err(*report.lines())
        return EXIT_FAIL
    except ValueError as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
