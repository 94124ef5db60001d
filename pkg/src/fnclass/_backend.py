"""Kernel backend selection.

The compiled extension is preferred when present; the numpy fallback is
always available. Set ``FNCLASS_BACKEND`` to ``c``, ``py`` or ``auto``
(default) to force a choice. Forcing ``c`` when the extension is missing
is an import-time error so that benchmarks cannot silently compare the
fallback against itself.
"""

import os

_choice = os.environ.get("FNCLASS_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "c", "py"):
    raise ImportError(
        f"FNCLASS_BACKEND must be one of 'auto', 'c', 'py', got {_choice!r}"
    )

if _choice == "py":
    from . import _kernels_py as _impl
elif _choice == "c":
    from . import _ckernels as _impl
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME
sq_l2_matrix = _impl.sq_l2_matrix
sq_l2_cross = _impl.sq_l2_cross
count_below = _impl.count_below
count_below_rows = _impl.count_below_rows
