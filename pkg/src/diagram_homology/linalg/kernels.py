"""Backend selection for the elimination kernels.

The compiled extension is used when it imports; setting
``DIAGRAM_HOMOLOGY_PURE_PYTHON=1`` forces the pure-Python engines.
"""

from __future__ import annotations

import os

from . import _echelon_py

try:
    if os.environ.get("DIAGRAM_HOMOLOGY_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _echelon as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_MAX_COMPILED_PRIME = 1 << 31


def _module(backend: str | None):
    choice = backend or BACKEND
    if choice == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return _compiled
    if choice == "python":
        return _echelon_py
    raise ValueError(f"unknown backend {backend!r}")


def modp_echelon(nrows: int, p: int, backend: str | None = None):
    if p >= _MAX_COMPILED_PRIME:
        return _echelon_py.ModpEchelon(nrows, p)
    return _module(backend).ModpEchelon(nrows, p)


def int_echelon(nrows: int, backend: str | None = None):
    return _module(backend).IntEchelon(nrows)


def python_int_echelon(nrows: int):
    return _echelon_py.IntEchelon(nrows)
