"""Kernel backend selection.

The compiled kernel (``gkmfactor._speedups``, built from Cython) is
preferred; the pure Python kernel is the fallback.  Set the environment
variable ``GKMFACTOR_PURE=1`` to force the pure backend, e.g. for the
benchmark or to reproduce results without a compiler.

Both backends implement the same canonical reduced echelon form, so
every result is identical bit for bit regardless of the backend.
"""

from __future__ import annotations

import os

if os.environ.get("GKMFACTOR_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
IntRREF = _impl.IntRREF
strip_content = _impl.strip_content
combine = _impl.combine
echelon = _impl.echelon
rank_of_rows = _impl.rank_of_rows
nullspace_of_rows = _impl.nullspace_of_rows

__all__ = [
    "BACKEND",
    "IntRREF",
    "strip_content",
    "combine",
    "echelon",
    "rank_of_rows",
    "nullspace_of_rows",
]
