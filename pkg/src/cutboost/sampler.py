"""Dynamic weighted edge sampling and exponential-clock edge ordering.

The sampler is a fixed-capacity binary indexed prefix-sum tree: sample,
update and delete are O(log m), and an undo log with checkpoint marks
restores leaf weights bit-exactly on LIFO rollback.
"""

from __future__ import annotations

import numpy as np

from .dsu import RollbackError


class SamplerError(RuntimeError):
    pass


class PrefixWeightIndex:
    def __init__(self, weights):
        weights = list(float(w) for w in weights)
        if any(w < 0 for w in weights):
            raise SamplerError("negative weight")
        self.m = len(weights)
        size = 1
        while size < max(self.m, 1):
            size *= 2
        self._size = size
        # tree[size + i] = leaf i; tree[k] = tree[2k] + tree[2k+1]
        self._tree = [0.0] * (2 * size)
        for i, w in enumerate(weights):
            self._tree[size + i] = w
        for k in range(size - 1, 0, -1):
            self._tree[k] = self._tree[2 * k] + self._tree[2 * k + 1]
        self._log = []  # (leaf index, old weight)
        self._marks = []

    def weight(self, e: int) -> float:
        return self._tree[self._size + e]

    def total(self) -> float:
        return self._tree[1]

    def _set_leaf(self, e: int, w: float) -> None:
        k = self._size + e
        old = self._tree[k]
        self._log.append((e, old))
        self._tree[k] = w
        delta = w - old
        k //= 2
        while k:
            self._tree[k] += delta
            k //= 2

    def update(self, e: int, w: float) -> None:
        if not 0 <= e < self.m:
            raise SamplerError(f"edge index {e} out of range")
        if w < 0:
            raise SamplerError("negative weight")
        self._set_leaf(e, float(w))

    def delete(self, e: int) -> None:
        self.update(e, 0.0)

    def sample(self, rng) -> int:
        """Draw an edge index with probability weight/total. No mutation."""
        total = self.total()
        if total <= 0:
            raise SamplerError("no live edges to sample")
        u = rng.random() * total
        k = 1
        while k < self._size:
            left = self._tree[2 * k]
            if u < left:
                k = 2 * k
            else:
                u -= left
                k = 2 * k + 1
        e = min(k - self._size, self.m - 1)
        # float drift can land on a zero leaf at the boundary; step to a live one
        while self._tree[self._size + e] == 0.0:
            e = (e + 1) % self.m
        return e

    def checkpoint(self) -> int:
        mark = len(self._log)
        self._marks.append(mark)
        return mark

    def rollback(self, mark: int) -> None:
        if not self._marks or self._marks[-1] != mark:
            raise RollbackError(f"non-LIFO rollback to mark {mark}")
        self._marks.pop()
        while len(self._log) > mark:
            e, old = self._log.pop()
            k = self._size + e
            delta = old - self._tree[k]
            self._tree[k] = old  # bit-exact leaf restore
            k //= 2
            while k:
                self._tree[k] += delta
                k //= 2


def exponential_clock_order(weights, rng) -> np.ndarray:
    """Weighted-sampling-without-replacement permutation of edge indices.

    Each index gets key X/w with X standard exponential; ascending key order
    is distributed as sequential sampling proportional to weight. Zero-weight
    indices get key +inf and sort last, ties broken by index.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.size == 0 or np.all(w == 0):
        raise SamplerError("need at least one positive weight")
    if np.any(w < 0):
        raise SamplerError("negative weight")
    keys = np.full(w.size, np.inf)
    live = w > 0
    keys[live] = rng.standard_exponential(int(live.sum())) / w[live]
    return np.argsort(keys, kind="stable")
