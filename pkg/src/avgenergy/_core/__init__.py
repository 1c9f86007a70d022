"""Hot kernels: the compiled extension when available, else pure Python.

Set ``AVGENERGY_PURE=1`` to force the fallback. Every wrapper below also
falls back per call when the int64 range of the compiled kernels could be
exceeded, so results never depend on the backend.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("AVGENERGY_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"

_SAFE = 2**61


def weight_array(weights):
    """int64 array, or an object array when some weight needs more bits."""
    wide = any(abs(w) >= 2**62 for w in weights)
    return np.asarray(weights, dtype=object if wide else np.int64)


def _impl(magnitude: int):
    if _compiled is not None and magnitude < _SAFE:
        return _compiled
    return _pykernels


def _maxw(weights) -> int:
    return int(abs(weights).max()) if len(weights) else 0


def value_iteration(offsets, targets, weights, minimize, horizon: int):
    mag = (horizon + 1) * (_maxw(weights) + 1)
    return _impl(mag).value_iteration(offsets, targets, weights, minimize, int(horizon))


def bellman_ford(offsets, targets, weights, source: int):
    n = len(offsets)
    mag = 4 * n * (_maxw(weights) + 1)
    return _impl(mag).bellman_ford(offsets, targets, weights, int(source))


def karp_min_mean(offsets, targets, weights):
    n = len(offsets)
    mag = 4 * n * n * (_maxw(weights) + 1)
    return _impl(mag).karp_min_mean(offsets, targets, weights)


def zero_cycle_forward(offsets, targets, weights, s: int, kmax: int, bound: int):
    mag = 4 * (kmax + 1) ** 2 * (bound + 1)
    return _impl(mag).zero_cycle_forward(offsets, targets, weights, int(s), int(kmax), int(bound))


def zero_cycle_path(offsets, targets, weights, s: int, k: int, bound: int):
    mag = 4 * (k + 1) ** 2 * (bound + 1)
    return _impl(mag).zero_cycle_path(offsets, targets, weights, int(s), int(k), int(bound))
