"""Passive radio tracking: geometry, scenario synthesis, tracker, metrics."""

try:
    from ._core import *  # noqa: F401,F403  (installed layout)
    from . import _core as _impl
except ImportError:  # in-tree build: extension module sits on sys.path
    from _core import *  # noqa: F401,F403
    import _core as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
