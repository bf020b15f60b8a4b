"""Backend selection for the hot graph kernels.

Two interchangeable backends exist: ``"numba"`` (sequential loops compiled
with ``numba.njit``) and ``"numpy"`` (level-synchronous vectorized loops).
The default is numba when it imports; setting ``FEASFLOW_DISABLE_JIT=1``
in the environment forces the numpy path. :func:`using` switches the
backend for the current context only.
"""

from __future__ import annotations

import contextlib
import contextvars
import os
from types import ModuleType

from . import _numpy

try:
    from . import _jit
except ImportError:  # numba missing or broken
    _jit = None

HAS_NUMBA = _jit is not None
JIT_DISABLED = os.environ.get("FEASFLOW_DISABLE_JIT", "").strip().lower() not in ("", "0", "false", "no")

BACKENDS: dict[str, ModuleType] = {"numpy": _numpy}
if HAS_NUMBA:
    BACKENDS["numba"] = _jit

DEFAULT_BACKEND = "numba" if HAS_NUMBA and not JIT_DISABLED else "numpy"

_active: contextvars.ContextVar[str] = contextvars.ContextVar("feasflow_backend", default=DEFAULT_BACKEND)


def active_name() -> str:
    return _active.get()


def active() -> ModuleType:
    return BACKENDS[_active.get()]


def get(name: str) -> ModuleType:
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}") from None


@contextlib.contextmanager
def using(name: str):
    """Run the enclosed block with backend ``name``."""
    get(name)
    token = _active.set(name)
    try:
        yield
    finally:
        _active.reset(token)
