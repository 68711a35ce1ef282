"""Backend selection for the exhaustive bitmask minimax.

The compiled extension is used when it imports; set ``INCIDENCE_PURE=1`` to
force the pure-Python implementation.
"""
from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("INCIDENCE_PURE"):
    _impl = _kernel_py
    BACKEND = "python"
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernel_py
        BACKEND = "python"

COLOR_CODES = {"B": 0, "R": 1, "G": 2}

minimax = _impl.minimax
child_values = _impl.child_values
probe_green = _impl.probe_green


def encode(position):
    """Masks, colour codes and claim masks for a :class:`~incidence.core.Position`."""
    board = position.board
    masks = [sum(1 << v for v in e.vertices) for e in board.edges]
    colors = [COLOR_CODES[e.color.value] for e in board.edges]
    left = sum(1 << v for v in position.left)
    right = sum(1 << v for v in position.right)
    return masks, colors, left, right
