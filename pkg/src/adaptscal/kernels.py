"""Kernel backend selection.

The compiled extension ``adaptscal._core`` is used when it imports; otherwise
the numpy fallback ``adaptscal._core_py`` is used. Set ``ADAPTSCAL_KERNELS`` to
``python`` or ``cython`` to force a choice (forcing ``cython`` without a built
extension raises ImportError).
"""

import os

from adaptscal import _core_py

_choice = os.environ.get("ADAPTSCAL_KERNELS", "auto").strip().lower()

if _choice == "python":
    core = _core_py
elif _choice == "cython":
    from adaptscal import _core as core
elif _choice == "auto":
    try:
        from adaptscal import _core as core
    except ImportError:
        core = _core_py
else:
    raise ImportError(f"ADAPTSCAL_KERNELS must be auto, python or cython, got {_choice!r}")

BACKEND = core.BACKEND


def available_backends():
    """Return ``{name: module}`` for every importable backend."""
    found = {"python": _core_py}
    try:
        from adaptscal import _core

        found["cython"] = _core
    except ImportError:
        pass
    return found
