"""Kernel backend selection.

The compiled ``_accel`` extension is used when importable; set
``REIDENT_PURE_PYTHON=1`` to force the numpy fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _fallback


def _load_accel() -> ModuleType | None:
    if os.environ.get("REIDENT_PURE_PYTHON", "").strip() not in ("", "0"):
        return None
    try:
        from . import _accel
    except ImportError:
        return None
    return _accel


_accel = _load_accel()
_impl: ModuleType = _accel if _accel is not None else _fallback

BACKEND: str = "cython" if _accel is not None else "numpy"

group_rows = _impl.group_rows
coresident_pairs = _impl.coresident_pairs


def available_backends() -> dict[str, ModuleType]:
    """Every importable backend, for benchmarks and cross-checks."""
    backends = {"numpy": _fallback}
    try:
        from . import _accel as accel
    except ImportError:
        pass
    else:
        backends["cython"] = accel
    return backends
