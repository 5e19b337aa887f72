"""Backend selection for the array kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise, or
when ``NHC_PURE_PYTHON`` is set to a non-empty value other than ``0``, the
pure-Python ``_purepy`` module is used. Both expose the same functions.
"""

import os

from . import _purepy

purepy = _purepy

if os.environ.get("NHC_PURE_PYTHON", "") not in ("", "0"):
    compiled = None
else:
    try:
        from . import _speedups as compiled
    except ImportError:  # extension not built
        compiled = None

backend = compiled if compiled is not None else purepy
BACKEND = "compiled" if compiled is not None else "python"

multi_source_dijkstra = backend.multi_source_dijkstra
louvain_move = backend.louvain_move
modularity_csr = backend.modularity_csr

__all__ = ["BACKEND", "compiled", "purepy", "multi_source_dijkstra", "louvain_move", "modularity_csr"]
