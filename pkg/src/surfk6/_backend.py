"""Select the compiled kernels unless ``SURFK6_PURE`` is set or the
extension is missing."""
from __future__ import annotations

import os

from . import _kernels as pure

BudgetExceeded = pure.BudgetExceeded

if os.environ.get("SURFK6_PURE", "") not in ("", "0"):
    fast = None
else:
    try:
        from . import _speedups as fast  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        fast = None

BACKEND = "cython" if fast is not None else "python"


def partition_search(n, adj, order, h, need, complete, allow_skip, budget, backend=None):
    use = backend or BACKEND
    if use == "cython" and fast is not None and n <= 64:
        return fast.partition_search(n, list(adj), list(order), h, list(need),
                                     bool(complete), bool(allow_skip), int(budget))
    if use not in ("python", "cython"):
        raise ValueError(f"unknown backend {use!r}")
    return pure.partition_search(n, adj, order, h, need, complete, allow_skip, budget)
