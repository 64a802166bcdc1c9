"""Backend selection for the bitmask kernels.

The compiled extension is used when it imports and the input fits its fixed
buffers; otherwise the pure-Python module runs. Setting the environment
variable ``REVCONC_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py as py

try:
    if os.environ.get("REVCONC_PURE_PYTHON") == "1":
        raise ImportError("pure Python requested")
    from . import _kernels as compiled
except ImportError:
    compiled = None

BACKEND = "compiled" if compiled is not None else "python"


def _pick(masks):
    if compiled is not None and compiled.supported(masks):
        return compiled
    return py


def stability_witnesses(masks):
    return _pick(masks).stability_witnesses(masks)


def is_stable(masks) -> bool:
    return _pick(masks).is_stable(masks)


def complete_prime_indices(masks) -> list[int]:
    return _pick(masks).complete_prime_indices(masks)


def stable_family_codes(table) -> list[int]:
    if compiled is not None and compiled.supported(table) and len(table) <= 40:
        return compiled.stable_family_codes(table)
    return py.stable_family_codes(table)
