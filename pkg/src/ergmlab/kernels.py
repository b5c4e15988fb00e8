"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``ERGMLAB_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

if not os.environ.get("ERGMLAB_PURE_PYTHON"):
    try:
        from . import _kernels as compiled_backend
    except ImportError:
        compiled_backend = None

backend = compiled_backend or python_backend
BACKEND_NAME = "compiled" if compiled_backend is not None else "python"


def available_backends():
    out = {"python": python_backend}
    if compiled_backend is not None:
        out["compiled"] = compiled_backend
    return out


def exponent_histogram(masks, wants, weights, nbits, low_bits, prefix, impl=None):
    impl = impl or backend
    if impl is not python_backend and nbits > 64:
        impl = python_backend
    try:
        return impl.exponent_histogram(masks, wants, weights, nbits, low_bits, prefix)
    except OverflowError:
        return python_backend.exponent_histogram(masks, wants, weights, nbits, low_bits, prefix)


def trifree_census(n, edges, impl=None):
    impl = impl or backend
    try:
        return impl.trifree_census(n, edges)
    except OverflowError:
        return python_backend.trifree_census(n, edges)


def hitting_sets(tris, budget, impl=None):
    impl = impl or backend
    try:
        return impl.hitting_sets(tris, budget)
    except OverflowError:
        return python_backend.hitting_sets(tris, budget)
