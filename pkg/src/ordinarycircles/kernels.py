"""Kernel backend selection.

The compiled Cython extension is preferred when present; the pure-Python twin
is a drop-in replacement. Set ORDINARYCIRCLES_KERNEL=pure to force the
fallback (used by the benchmark and the equivalence tests).
"""
import os

from . import _kernels_py

if os.environ.get("ORDINARYCIRCLES_KERNEL") == "pure":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = _impl.BACKEND
det3 = _impl.det3
det3_sign = _impl.det3_sign
det4_sign = _impl.det4_sign
circle3_minors = _impl.circle3_minors
incident_indices = _impl.incident_indices
poly_mul_reduce = _impl.poly_mul_reduce
