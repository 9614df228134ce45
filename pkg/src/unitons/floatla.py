"""Double-precision backend for pointwise linear algebra.

Used only where exact arithmetic cannot reach (cross-checking the exact
evaluator and quick numerical ranks).  Rank threshold: 1e-8 times the largest
singular value.
"""

from __future__ import annotations

import numpy as np

RANK_RTOL = 1e-8


def projector(columns, n: int) -> np.ndarray:
    """Orthogonal projector onto span(columns) via SVD."""
    if not columns:
        return np.zeros((n, n), dtype=complex)
    b = np.array(columns, dtype=complex).T
    u, s, _ = np.linalg.svd(b, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((n, n), dtype=complex)
    r = int(np.sum(s > RANK_RTOL * s[0]))
    ur = u[:, :r]
    return ur @ ur.conj().T


def numerical_rank(columns, n: int) -> int:
    if not columns:
        return 0
    b = np.array(columns, dtype=complex).T
    s = np.linalg.svd(b, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > RANK_RTOL * s[0]))


def max_abs(a) -> float:
    arr = np.asarray(a, dtype=complex)
    return float(np.max(np.abs(arr))) if arr.size else 0.0
