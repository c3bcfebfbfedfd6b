"""Selects the eigensolver kernel: compiled extension when importable, else pure Python.

``ULAB_BACKEND=compiled|python`` forces the choice at import time;
``use_backend`` swaps it at runtime (used by the benchmark and backend tests).
"""

from __future__ import annotations

import os

from . import _jacobi_py

_backends = {"python": _jacobi_py}
try:
    from . import _jacobi

    _backends["compiled"] = _jacobi
except ImportError:
    pass

_forced = os.environ.get("ULAB_BACKEND", "").strip().lower()
if _forced and _forced not in _backends:
    raise ImportError(
        f"ULAB_BACKEND={_forced!r} not available; choices: {sorted(_backends)}"
    )
_active = _backends[_forced] if _forced else _backends.get("compiled", _jacobi_py)


def available_backends() -> list[str]:
    return sorted(_backends)


def backend_name() -> str:
    return "compiled" if _active is _backends.get("compiled") else "python"


def use_backend(name: str) -> None:
    global _active
    if name not in _backends:
        raise ValueError(f"unknown backend {name!r}; choices: {sorted(_backends)}")
    _active = _backends[name]


def jacobi_eigh(H):
    return _active.jacobi_eigh(H)
