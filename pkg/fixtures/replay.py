"""Replay every worked example in manifest.txt and diff against expected/.

    python fixtures/replay.py            # compare, exit 1 on any difference
    python fixtures/replay.py --update   # rewrite the expected outputs
"""

from __future__ import annotations

import argparse
import contextlib
import io
import os
import shlex
import sys
from pathlib import Path

from revconc.cli import main as cli_main

HERE = Path(__file__).resolve().parent


def load_manifest(path: Path = HERE / "manifest.txt") -> list[tuple[str, list[str]]]:
    entries = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, command = line.partition("|")
        entries.append((name.strip(), shlex.split(command)))
    return entries


def run(argv: list[str]) -> str:
    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(HERE)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = cli_main(argv)
    finally:
        os.chdir(cwd)
    return f"$ revconc {shlex.join(argv)}\nexit: {code}\n--- stdout\n{out.getvalue()}--- stderr\n{err.getvalue()}"


def replay(update: bool = False) -> list[str]:
    """Names of the examples whose output differs from the committed one."""
    mismatched = []
    for name, argv in load_manifest():
        got = run(argv)
        target = HERE / "expected" / f"{name}.out"
        if update:
            target.write_text(got, encoding="utf-8")
        elif not target.exists() or target.read_text(encoding="utf-8") != got:
            mismatched.append(name)
    return mismatched


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--update", action="store_true")
    args = parser.parse_args()
    bad = replay(args.update)
    for name in bad:
        print(f"MISMATCH {name}", file=sys.stderr)
    print(f"{len(load_manifest()) - len(bad)}/{len(load_manifest())} examples match", file=sys.stderr)
    sys.exit(1 if bad else 0)
