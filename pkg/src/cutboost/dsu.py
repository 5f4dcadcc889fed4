"""Union-find with union by rank and LIFO checkpoint/rollback.

No path compression: keeps the undo log at most two entries per union and
find at O(log n) worst case, which is all the depth-first recursion needs.
"""

from __future__ import annotations


class RollbackError(RuntimeError):
    pass


class RollbackDSU:
    def __init__(self, n: int):
        self.n = n
        self.parent = list(range(n))
        self.rank = [0] * n
        self.components = n
        # undo log entries: ("p"|"r", index, old value) or ("c",) for a merge
        self._log = []
        self._marks = []

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            v = self.parent[v]
        return v

    def union(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        if self.rank[ru] < self.rank[rv]:
            ru, rv = rv, ru
        elif self.rank[ru] == self.rank[rv]:
            # tie: lower id becomes root, for determinism
            if rv < ru:
                ru, rv = rv, ru
            self._log.append(("r", ru, self.rank[ru]))
            self.rank[ru] += 1
        self._log.append(("p", rv, self.parent[rv]))
        self.parent[rv] = ru
        self._log.append(("c",))
        self.components -= 1
        return True

    def checkpoint(self) -> int:
        mark = len(self._log)
        self._marks.append(mark)
        return mark

    def rollback(self, mark: int) -> None:
        if not self._marks or self._marks[-1] != mark:
            raise RollbackError(f"non-LIFO rollback to mark {mark}")
        self._marks.pop()
        while len(self._log) > mark:
            entry = self._log.pop()
            if entry[0] == "p":
                self.parent[entry[1]] = entry[2]
            elif entry[0] == "r":
                self.rank[entry[1]] = entry[2]
            else:
                self.components += 1
