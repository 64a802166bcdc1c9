import os
import subprocess
import sys

import pytest

from conftest import all_families
from revconc import _kernels_py as py
from revconc import kernels
from revconc.oracle import GeneratorSpec, _subset_table, enumerate_structures

compiled = kernels.compiled
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")

FAMILIES = [C.masks for n in (1, 2, 3) for C in all_families(n)]
SAMPLED = [C.masks for C in enumerate_structures(GeneratorSpec(4, seed=11, samples=300))]


@needs_compiled
@pytest.mark.parametrize("fn", ["stability_witnesses", "is_stable", "complete_prime_indices"])
def test_backends_agree(fn):
    for masks in FAMILIES + SAMPLED:
        assert getattr(py, fn)(masks) == getattr(compiled, fn)(masks), masks


@needs_compiled
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_stable_family_codes_agree(n):
    table = _subset_table(tuple("abcd"[:n]))
    assert py.stable_family_codes(table) == compiled.stable_family_codes(table)


def test_dispatch_falls_back_for_large_inputs():
    masks = list(range(1 << 8))
    if compiled is not None:
        assert not compiled.supported(masks)
    assert kernels.is_stable(masks) == py.is_stable(masks)


def test_pure_python_switch():
    env = dict(os.environ, REVCONC_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import revconc; print(revconc.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
