"""Counting-kernel selection.

Prefers the compiled extension (``partpat._kernel``, built from Cython)
and falls back to the pure-Python twin when the extension is missing.
Setting PARTPAT_PURE_PYTHON=1 forces the fallback, which is handy for
debugging and for the kernel benchmark.
"""

import os

if os.environ.get("PARTPAT_PURE_PYTHON") == "1":
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel as _impl
    except ImportError:
        from . import _kernel_py as _impl

BACKEND = _impl.BACKEND
count = _impl.count
count_by_blocks = _impl.count_by_blocks


def available_backends():
    """Names of the kernels importable in this environment."""
    names = ["python"]
    try:
        from . import _kernel  # noqa: F401
        names.insert(0, "cython")
    except ImportError:
        pass
    return names
