"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over.  :func:`use_backend` switches explicitly (tests and the
benchmark run both).
"""

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_active = _compiled if _compiled is not None else _kernels_py


def available_backends():
    return ["python"] + (["cython"] if _compiled is not None else [])


def backend():
    return _active.BACKEND


def use_backend(name):
    """Select ``"python"`` or ``"cython"``; returns the previously active name."""
    global _active
    prev = _active.BACKEND
    if name == "python":
        _active = _kernels_py
    elif name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    return prev


def oct_mul(A, B, kidx, ksign, add, mul, neg):
    return _active.oct_mul(A, B, kidx, ksign, add, mul, neg)


def rref(M, add, mul, neg, inv):
    return _active.rref(M, add, mul, neg, inv)


def onan_search(masks):
    if _active is _compiled and masks and max(masks) >= (1 << 64):
        return _kernels_py.onan_search(masks)
    return _active.onan_search(masks)
