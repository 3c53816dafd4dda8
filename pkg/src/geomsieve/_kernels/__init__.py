"""Kernel backend selection.

Two interchangeable implementations of the hot bit-matrix loops exist:
a Cython extension (built at install time when a compiler is present)
and a pure-Python fallback.  Selection happens once at import, driven by
the GEOMSIEVE_KERNELS environment variable:

    auto      use the compiled kernel when available (default)
    compiled  require the compiled kernel, fail otherwise
    pure      force the pure-Python fallback

``benchmarks/bench_kernels.py`` compares the two.
"""

import os

from . import _bitops_py

try:
    from . import _bitops
except ImportError:
    _bitops = None


def pure_backend():
    return _bitops_py


def compiled_backend():
    """The compiled kernel module, or None if it was not built."""
    return _bitops


def select_backend(choice=None):
    if choice is None:
        choice = os.environ.get("GEOMSIEVE_KERNELS", "auto")
    choice = choice.lower()
    if choice == "pure":
        return _bitops_py
    if choice == "compiled":
        if _bitops is None:
            raise RuntimeError(
                "GEOMSIEVE_KERNELS=compiled but the extension is not built")
        return _bitops
    if choice == "auto":
        return _bitops if _bitops is not None else _bitops_py
    raise ValueError(f"unknown kernel choice {choice!r}")


_active = select_backend()

BACKEND = _active.BACKEND_NAME
transitive_closure = _active.transitive_closure
scan_pairs = _active.scan_pairs
