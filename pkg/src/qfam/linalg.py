"""Small dense linear-algebra helpers shared across modules."""

from __future__ import annotations

import numpy as np

# Singular values below RANK_CUT * s_max are treated as zero everywhere a
# numerical rank is needed.
RANK_CUT = 1e-9


def numeric_rank(mat: np.ndarray, rel_cut: float = RANK_CUT) -> int:
    """Rank of a matrix with singular values cut at rel_cut times the largest."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s >= rel_cut * s[0]))


def nullspace(mat: np.ndarray, rel_cut: float = RANK_CUT) -> np.ndarray:
    """Orthonormal basis, as columns, of the numerical nullspace of mat."""
    mat = np.asarray(mat, dtype=complex)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(s >= rel_cut * s[0]))
    return vh[rank:].conj().T


def span_residual(span: np.ndarray, target: np.ndarray) -> float:
    """Distance from target to the column span of span, via least squares."""
    target = np.asarray(target, dtype=complex)
    span = np.asarray(span, dtype=complex)
    if span.size == 0:
        return float(np.linalg.norm(target))
    coef, *_ = np.linalg.lstsq(span, target, rcond=None)
    return float(np.linalg.norm(target - span @ coef))
