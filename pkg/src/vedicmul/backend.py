"""Select the kernel implementation at import time.

The compiled ``_core`` extension is preferred.  Set ``VEDICMUL_PURE_PYTHON=1``
to force the pure-Python kernels (the extension assumes a little-endian host).
"""
import os
import sys

from . import _pycore

if os.environ.get("VEDICMUL_PURE_PYTHON") or sys.byteorder != "little":
    _impl = _pycore
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _pycore

NAME = "cython" if _impl is not _pycore else "python"

school_mul = _impl.school_mul
nik_square = _impl.nik_square
nik_mul = _impl.nik_mul
karatsuba = _impl.karatsuba


def compiled_available() -> bool:
    try:
        from . import _core  # noqa: F401
    except ImportError:
        return False
    return True
