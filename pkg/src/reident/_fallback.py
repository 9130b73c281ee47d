"""Pure numpy kernels, used when the compiled extension is unavailable.

These define the reference semantics: ``reident._accel`` must return
bit-identical arrays for identical inputs.
"""

from __future__ import annotations

import numpy as np


def _densify(values: np.ndarray) -> tuple[np.ndarray, int]:
    uniq, inverse = np.unique(values, return_inverse=True)
    return inverse.reshape(-1).astype(np.int64, copy=False), len(uniq)


def group_rows(keys) -> tuple[np.ndarray, np.ndarray]:
    """Exact grouping of key rows; class ids numbered by first appearance."""
    keys = np.ascontiguousarray(keys, dtype=np.int64)
    if keys.ndim != 2:
        raise ValueError("keys must be a 2-D array")
    n, width = keys.shape
    if n == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    if width == 0:
        return np.zeros(n, np.int64), np.array([n], np.int64)

    # Mixed-radix over densified columns: every step stays below n * n.
    code, _ = _densify(keys[:, 0])
    for j in range(1, width):
        col, radix = _densify(keys[:, j])
        code, _ = _densify(code * radix + col)

    _, first, inverse, counts = np.unique(
        code, return_index=True, return_inverse=True, return_counts=True
    )
    rank = np.argsort(first, kind="stable")
    relabel = np.empty(len(rank), np.int64)
    relabel[rank] = np.arange(len(rank), dtype=np.int64)
    return relabel[inverse.reshape(-1)], counts[rank].astype(np.int64)


def coresident_pairs(order, offsets, gender) -> tuple[np.ndarray, np.ndarray]:
    order = np.asarray(order, dtype=np.int64)
    offsets = np.asarray(offsets, dtype=np.int64)
    gender = np.asarray(gender, dtype=np.uint8)
    sizes = np.diff(offsets)
    if len(order) == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)

    # Every ordered (x, y) position pair inside a group, x-major.
    group_of = np.repeat(np.arange(len(sizes)), sizes)
    reps = sizes[group_of]
    left = np.repeat(np.arange(len(order), dtype=np.int64), reps)
    start = np.repeat(offsets[:-1][group_of], reps)
    within = np.arange(len(left), dtype=np.int64) - np.repeat(np.cumsum(reps) - reps, reps)
    right = start + within

    males = order[left]
    females = order[right]
    keep = (gender[males] == 0) & (gender[females] == 1)
    return males[keep], females[keep]
