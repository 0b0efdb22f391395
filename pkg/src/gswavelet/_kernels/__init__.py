"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
reference implementation takes over.  Setting ``GSW_PURE_PYTHON=1`` forces
the fallback.
"""

import os

import numpy as np

from . import _reference

if os.environ.get("GSW_PURE_PYTHON", "") not in ("", "0"):
    _fast = None
else:
    try:
        from . import _fast
    except ImportError:
        _fast = None

BACKEND = "compiled" if _fast is not None else "python"
_impl = _fast if _fast is not None else _reference


def backends():
    """Available implementations, keyed by name."""
    out = {"python": _reference}
    if _fast is not None:
        out["compiled"] = _fast
    return out


def periodized_sample(table, y0, hy, ys, scale, period, kmax, impl=None):
    impl = impl or _impl
    ys = np.ascontiguousarray(ys, dtype=float)
    table = np.ascontiguousarray(table, dtype=np.complex128)
    if table.ndim == 1:
        return impl.periodized_sample_1d(table, float(y0), float(hy), ys.reshape(-1),
                                         float(scale), float(period), int(kmax))
    return impl.periodized_sample_2d(table, float(y0), float(hy), ys.reshape(-1, 2),
                                     float(scale), float(period), int(kmax))


def dtft(samples, x0, dx, xi, impl=None):
    impl = impl or _impl
    samples = np.ascontiguousarray(samples, dtype=np.complex128)
    xi = np.ascontiguousarray(xi, dtype=float)
    if samples.ndim == 1:
        return impl.dtft_1d(samples, float(x0), float(dx), xi.reshape(-1))
    return impl.dtft_2d(samples, float(x0), float(dx), xi.reshape(-1, 2))
