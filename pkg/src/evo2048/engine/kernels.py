"""Engine backend selection: compiled kernels with pure-Python fallback.

The compiled extension (``evo2048.engine._fast``) is preferred when it
imports; otherwise the pure-Python twin is used.  ``EVO2048_BACKEND=pure``
or ``=fast`` in the environment forces a choice (forcing ``fast`` raises
if the extension is unavailable).  ``use()`` switches at runtime, which
the equivalence tests and the benchmark rely on.
"""

from __future__ import annotations

import os

from . import _pure

# Policy codes and constants are backend-independent contract values.
POLICY_UNIFORM = _pure.POLICY_UNIFORM
POLICY_GREEDY = _pure.POLICY_GREEDY
EXPONENT_CAP = _pure.EXPONENT_CAP
SCORE_NORM = _pure.SCORE_NORM

_backend = None


def _select_initial():
    forced = os.environ.get("EVO2048_BACKEND", "").strip().lower()
    if forced in ("pure", "python"):
        return _pure
    try:
        from . import _fast

        return _fast
    except ImportError:
        if forced in ("fast", "compiled"):
            raise
        return _pure


def backend():
    """The active kernel module."""
    global _backend
    if _backend is None:
        _backend = _select_initial()
    return _backend


def backend_name() -> str:
    return backend().BACKEND_NAME


def use(name: str):
    """Force a backend ('pure' or 'fast'); returns the module."""
    global _backend
    if name in ("pure", "python"):
        _backend = _pure
    elif name in ("fast", "compiled"):
        from . import _fast

        _backend = _fast
    else:
        raise ValueError(f"unknown backend {name!r}")
    return _backend


def available_backends() -> list[str]:
    names = ["pure"]
    try:
        from . import _fast  # noqa: F401

        names.append("fast")
    except ImportError:
        pass
    return names


# Thin forwarders so call sites read naturally; the per-call indirection is
# irrelevant because hot loops live inside a single backend call.


def slide(board: int, direction: int):
    return backend().slide(board, direction)


def legal_mask(board: int) -> int:
    return backend().legal_mask(board)


def count_empty(board: int) -> int:
    return backend().count_empty(board)


def max_exponent(board: int) -> int:
    return backend().max_exponent(board)


def kth_empty(board: int, k: int) -> int:
    return backend().kth_empty(board, k)


def set_cell(board: int, cell: int, exponent: int) -> int:
    return backend().set_cell(board, cell, exponent)


def eval_term_id(board: int, term_id: int) -> float:
    return backend().eval_term_id(board, term_id)


def eval_weighted(board: int, term_ids, weights) -> float:
    return backend().eval_weighted(board, term_ids, weights)


def playout(board: int, depth: int, policy: int, seed: int):
    return backend().playout(board, depth, policy, seed)


def search_eval(board, playouts, depth, policy, lam, term_ids, weights, base_seed):
    return backend().search_eval(
        board, playouts, depth, policy, lam, term_ids, weights, base_seed
    )
