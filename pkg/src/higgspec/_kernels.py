"""Kernel backend selection.

Imports the compiled extension when it is built, otherwise the pure-Python
fallback.  ``HIGGSPEC_PURE_PYTHON=1`` forces the fallback; tests and the
benchmark switch explicitly via :func:`select_backend`.
"""

import os

from . import _core_py

try:
    from . import _core
except ImportError:
    _core = None

_FUNCS = (
    "add_terms",
    "sub_terms",
    "scale_terms",
    "mul_terms",
    "submul_terms",
    "eval_terms",
)

BACKEND = None


def available_backends():
    return ("cython", "python") if _core is not None else ("python",)


def select_backend(name):
    global BACKEND
    if name == "cython":
        if _core is None:
            raise RuntimeError("compiled kernels are not built; run setup.py build_ext --inplace")
        impl = _core
    elif name == "python":
        impl = _core_py
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    for fn in _FUNCS:
        globals()[fn] = getattr(impl, fn)
    BACKEND = name


select_backend(
    "python"
    if (_core is None or os.environ.get("HIGGSPEC_PURE_PYTHON") == "1")
    else "cython"
)
