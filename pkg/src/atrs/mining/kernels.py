"""Selects the support-counting kernel at import time.

The compiled extension is preferred; the pure-Python fallback is used when
the extension was not built or when ATRS_PURE_PYTHON is set. Both produce
identical integer counts.
"""

from __future__ import annotations

import os

if os.environ.get("ATRS_PURE_PYTHON"):
    from ._counting_py import count_candidates

    KERNEL_NAME = "python"
else:
    try:
        from ._counting_cy import count_candidates  # type: ignore[no-redef]

        KERNEL_NAME = "cython"
    except ImportError:
        from ._counting_py import count_candidates  # type: ignore[no-redef]

        KERNEL_NAME = "python"

__all__ = ["count_candidates", "KERNEL_NAME"]
