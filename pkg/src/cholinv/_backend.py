"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels take over.  :func:`use_backend` switches explicitly, which the tests
and the benchmark use to compare the two.
"""

from __future__ import annotations

import contextlib

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_active = _ckernels if _ckernels is not None else _pykernels


def available_backends() -> list[str]:
    return ["compiled", "python"] if _ckernels is not None else ["python"]


def backend_name() -> str:
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


def set_backend(name: str) -> None:
    global _active
    if name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not available in this installation")
        _active = _ckernels
    elif name == "python":
        _active = _pykernels
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextlib.contextmanager
def use_backend(name: str):
    previous = backend_name()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def kernels():
    return _active


def new_counts(counter) -> np.ndarray | None:
    """Scratch count array for one kernel call.

    The compiled kernels always count (it is free); the Python kernels only
    wrap scalars when a counter was actually requested.
    """
    if counter is None and _active is _pykernels:
        return None
    return np.zeros(4, dtype=np.int64)


def flush(counts, counter) -> None:
    if counter is not None and counts is not None:
        counter.add_counts(counts)
