"""Best-ball density search, compiled kernel with pure-python fallback.

The compiled extension is preferred when the build produced it; otherwise
the numpy implementation is used.  ``BACKEND`` records the choice, and
``BRAESSLAB_BALLSEARCH=python`` forces the fallback (used by the tests
and the benchmark to compare both paths).
"""

from __future__ import annotations

import os

from . import _ballsearch_py

if os.environ.get("BRAESSLAB_BALLSEARCH") == "python":
    max_ball_count = _ballsearch_py.max_ball_count
    BACKEND = "python"
else:
    try:
        from ._ballsearch_cy import max_ball_count

        BACKEND = "compiled"
    except ImportError:
        max_ball_count = _ballsearch_py.max_ball_count
        BACKEND = "python"

__all__ = ["max_ball_count", "BACKEND"]
