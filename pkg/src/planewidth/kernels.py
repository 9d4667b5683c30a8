"""Backend selection for the hot kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise the
numpy fallback in ``_purepy`` takes over. Set ``PLANEWIDTH_PURE=1`` to force
the fallback.
"""

from __future__ import annotations

import os
import types

from . import _purepy

ARMIJO, FIXED = _purepy.ARMIJO, _purepy.FIXED
OK, STALLED, NONFINITE = _purepy.OK, _purepy.STALLED, _purepy.NONFINITE

def _load_compiled():
    if os.environ.get("PLANEWIDTH_PURE", "").strip() not in ("", "0"):
        return None
    try:
        from . import _speedups
    except ImportError:
        return None
    return _speedups


_compiled = _load_compiled()
BACKEND = "cython" if _compiled is not None else "python"


def backends() -> dict[str, types.ModuleType]:
    """All importable backends keyed by name, for tests and benchmarks."""
    out = {"python": _purepy}
    try:
        from . import _speedups
    except ImportError:
        pass
    else:
        out["cython"] = _speedups
    return out


_impl = _compiled if _compiled is not None else _purepy
pair_extremes = _impl.pair_extremes
descend = _impl.descend
circular_search = _impl.circular_search
bandwidth_search = _impl.bandwidth_search
