"""Pure-Python/numpy versions of the sign-vector kernels.

Must match the compiled ``_kernels`` module bit for bit.
"""
from __future__ import annotations

import numpy as np


def face_leq_matrix(upper: np.ndarray, lower: np.ndarray) -> np.ndarray:
    """out[i, j] = True iff lower[j] is a face of upper[i] (lower[j][h] in {0, upper[i][h]})."""
    upper = np.asarray(upper, dtype=np.int8)
    lower = np.asarray(lower, dtype=np.int8)
    if upper.shape[0] == 0 or lower.shape[0] == 0:
        return np.zeros((upper.shape[0], lower.shape[0]), dtype=bool)
    ok = (lower[None, :, :] == 0) | (lower[None, :, :] == upper[:, None, :])
    return ok.all(axis=2)


def compose_rows(chambers: np.ndarray, face: np.ndarray) -> np.ndarray:
    """Covector composition face o chamber for every row of ``chambers``."""
    chambers = np.asarray(chambers, dtype=np.int8)
    face = np.asarray(face, dtype=np.int8)
    return np.where(face[None, :] != 0, face[None, :], chambers)


def separation_counts(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """out[i, j] = number of hyperplanes h with a[i][h] == -b[j][h] != 0."""
    a = np.asarray(a, dtype=np.int8)
    b = np.asarray(b, dtype=np.int8)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[0]), dtype=np.int64)
    opp = (a[:, None, :] * b[None, :, :]) < 0
    return opp.sum(axis=2).astype(np.int64)
