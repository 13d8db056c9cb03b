"""Kernel selection: compiled extension if available, pure Python otherwise.

Set the environment variable ``MNCOMPLEX_PURE=1`` to force the fallback.
"""

import os

from . import pykern

if os.environ.get("MNCOMPLEX_PURE"):
    _impl = pykern
else:
    try:
        from . import _fastkern as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pykern

IMPLEMENTATION = _impl.IMPLEMENTATION

enumerate_faces = _impl.enumerate_faces
common_neighbor_bits = pykern.common_neighbor_bits

__all__ = ["IMPLEMENTATION", "enumerate_faces", "common_neighbor_bits", "pykern"]
