"""Kernel backend selection.

The compiled extension is used when importable; ``LEJAKIT_PURE=1`` forces
the numpy implementation.  ``LEJAKIT_THREADS`` caps the worker count of the
compiled kernels (results do not depend on it: every point is evaluated
independently and reductions happen afterwards in a fixed order).
"""
import os

from . import _kernels_py

if os.environ.get("LEJAKIT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND


def thread_count() -> int:
    raw = os.environ.get("LEJAKIT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def log_weights(nodes):
    return _impl.log_weights(nodes, thread_count())


def lebesgue_eval(nodes, logd, points):
    return _impl.lebesgue_eval(nodes, logd, points, thread_count())


def logabs_w(nodes, points):
    return _impl.logabs_w(nodes, points, thread_count())


def next_point_profile(nodes, kmax):
    return _impl.next_point_profile(nodes, kmax)
