"""Hot-loop selection: the compiled extension when importable, else pure Python.

Set ``BOTTSAMELSON_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels

IMPLEMENTATION = "python"

if os.environ.get("BOTTSAMELSON_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl
        IMPLEMENTATION = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

MulTable = _impl.MulTable
expand_squares = _impl.expand_squares

__all__ = ["IMPLEMENTATION", "MulTable", "expand_squares"]
