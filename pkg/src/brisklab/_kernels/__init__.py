"""Scoring kernel backend selection.

The compiled extension is preferred when importable; set BRISKLAB_KERNELS to
"numpy" or "cython" to force a backend ("cython" raises if the extension is
missing instead of falling back).
"""

from __future__ import annotations

import os

_choice = os.environ.get("BRISKLAB_KERNELS", "auto").strip().lower()
if _choice not in ("auto", "cython", "numpy"):
    raise ImportError(f"BRISKLAB_KERNELS must be auto, cython or numpy, got {_choice!r}")

if _choice == "numpy":
    from brisklab._kernels import _numpy as _impl
else:
    try:
        from brisklab._kernels import _cyscore as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _choice == "cython":
            raise ImportError(
                "BRISKLAB_KERNELS=cython but the compiled extension is not available"
            ) from None
        from brisklab._kernels import _numpy as _impl

BACKEND = _impl.BACKEND_NAME

linear_scores = _impl.linear_scores
product_scores = _impl.product_scores
multilinear_scores = _impl.multilinear_scores
slos_scores = _impl.slos_scores
count_wins = _impl.count_wins
paired_win_counts = _impl.paired_win_counts

__all__ = [
    "BACKEND",
    "linear_scores",
    "product_scores",
    "multilinear_scores",
    "slos_scores",
    "count_wins",
    "paired_win_counts",
]
