"""Engine selection: compiled sweep kernel with pure-Python fallback.

The compiled extension (netloc._sweep_c, built from _sweep_c.pyx) and the
pure-Python module (netloc._sweep_py) implement the identical algorithm on
identical integer inputs and must return identical outputs. Selection happens
here at import time; set NETLOC_ENGINE=py or NETLOC_ENGINE=c to force one.

The compiled kernel works on int64, so it is only used when the scaled
integers comfortably fit; otherwise the unbounded-int Python path is taken.
"""

from __future__ import annotations

import os

from . import _sweep_py

try:
    from . import _sweep_c
except ImportError:  # extension not built
    _sweep_c = None

_CHOICE = os.environ.get("NETLOC_ENGINE", "auto")
if _CHOICE not in ("auto", "py", "c"):
    raise RuntimeError(f"NETLOC_ENGINE must be auto, py, or c (got {_CHOICE!r})")
if _CHOICE == "c" and _sweep_c is None:
    raise RuntimeError("NETLOC_ENGINE=c but the compiled kernel is not available")

# int64 safety: the sweep multiplies inputs by at most 16 and sums a few terms
_C_LIMIT = 1 << 55


def engine_name() -> str:
    if _CHOICE == "py" or _sweep_c is None:
        return "python"
    return "compiled"


def sweep_edge(edge_meta, n_vertices, dist, pieces, e, max_abs_input):
    """Dispatch one probe-edge sweep to the active kernel."""
    if (
        _sweep_c is not None
        and _CHOICE != "py"
        and max_abs_input < _C_LIMIT
    ):
        res = _sweep_c.sweep_edge(edge_meta, n_vertices, dist, pieces, e)
        if res[0]:
            return res
        if _CHOICE == "c":
            raise AssertionError("compiled sweep reported an inconsistency")
        # fall through to the reference implementation
    res = _sweep_py.sweep_edge(edge_meta, n_vertices, dist, pieces, e)
    if not res[0]:
        raise AssertionError(
            "sweep detected a non-affine probe cell; this indicates a bug"
        )
    return res
