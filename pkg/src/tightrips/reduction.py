"""Backend selection for the persistence reduction kernel.

Prefers the compiled extension built from _reduction.pyx; falls back to the
pure-Python kernel with an identical contract.  `benchmarks/bench_reduction.py`
times the two side by side and the test suite cross-checks their outputs.
"""

from __future__ import annotations

from . import _reduction_py

try:  # pragma: no cover - exercised indirectly
    from . import _reduction as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

_backend = _compiled if _compiled is not None else _reduction_py


def backend_name() -> str:
    return "compiled" if _backend is _compiled and _compiled is not None else "python"


def available_backends() -> dict:
    out = {"python": _reduction_py}
    if _compiled is not None:
        out["compiled"] = _compiled
    return out


def reduce_matrix(n_rows, indptr, indices, data, p, skip=None, track=False):
    return _backend.reduce_matrix(n_rows, indptr, indices, data, p,
                                  skip=skip, track=track)
