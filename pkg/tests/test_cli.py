import io
import subprocess
import sys
from pathlib import Path

import pytest

from revconc.cli import main
from revconc.io import parse

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(autouse=True)
def in_fixtures(monkeypatch):
    monkeypatch.chdir(FIXTURES)


def run(capsys, monkeypatch, *argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stable_fixture_exits_zero(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "stable", "crossed.cs")
    assert code == 0
    assert "Coherent: pass" in err
    assert parse(out).value.events == {"a", "b", "c", "d"}


def test_unstable_fixture_exits_one(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "stable", "c1.cs")
    assert code == 1
    assert "IntersectionClosed: FAIL (witness {a,c}, {b,c}; missing {c})" in err
    assert "not stable: IntersectionClosed" in err


def test_parse_error_exits_two(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "validate", "-", stdin='{"kind":"cs",')
    assert code == 2
    assert "line 1" in err


def test_invalid_structure_exits_one(capsys, monkeypatch):
    code, out, err = run(
        capsys, monkeypatch, "validate", "-", stdin='{"kind":"cs","events":["a"],"configurations":[["a"]]}'
    )
    assert code == 1
    assert "rooted" in out + err


def test_resource_cap_exits_three(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "lts", "--mode", "reversible", "--cap", "3", "c0.cs")
    assert code == 3
    assert "cap of 3" in err


def test_residual_by_non_configuration(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "residuate", "--symmetric", "--by", "a,b,c", "c0.cs")
    assert code == 1
    assert "not a configuration" in err


def test_unknown_theorem_is_a_usage_error(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "check", "--theorem", "nope", "--size", "2")
    assert code == 2
    assert "unknown theorem" in err


def test_size_five_needs_a_seed(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "check", "--theorem", "stable-orbits", "--size", "5")
    assert code == 2


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["residuate", "c0.cs"])
    assert exc.value.code == 2


def test_residual_output_is_a_document(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "residuate", "--symmetric", "--by", "c", "c0.cs")
    assert code == 0
    doc = parse(out)
    code, out, err = run(capsys, monkeypatch, "same-orbit", "c0.cs", "-", stdin=out)
    assert code == 0
    assert doc.kind == "cs"


def test_check_reports_on_stderr(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "check", "--theorem", "adequacy", "--size", "2")
    assert code == 0
    assert out == ""
    assert err.startswith("adequacy: 0 failures / 18 instances")


def test_iso(capsys, monkeypatch):
    code, out, err = run(capsys, monkeypatch, "iso", "heredity.pes", "heredity.pes")
    assert code == 0
    assert out.splitlines() == ["a\ta", "b\tb", "c\tc"]
    code, out, err = run(capsys, monkeypatch, "iso", "heredity.pes", "c0.cs")
    assert code == 2


def test_console_script_pipeline():
    first = subprocess.run(
        [sys.executable, "-m", "revconc.cli", "to-es", "--relabel", "crossed.cs"],
        cwd=FIXTURES, capture_output=True, text=True, check=True,
    )
    second = subprocess.run(
        [sys.executable, "-m", "revconc.cli", "to-cs", "-"],
        cwd=FIXTURES, input=first.stdout, capture_output=True, text=True,
    )
    assert second.returncode == 0
    assert second.stdout == (FIXTURES / "crossed.cs").read_text()
