"""Edmonds-Karp maximum flow and minimum cut on a sparse graph."""

from __future__ import annotations

from collections import deque

INF = 10**9


class FlowNetwork:
    def __init__(self):
        self.cap: list[dict[int, int]] = []
        self.keys: dict = {}

    def node(self, key) -> int:
        i = self.keys.get(key)
        if i is None:
            i = self.keys[key] = len(self.cap)
            self.cap.append({})
        return i

    def add_edge(self, u: int, v: int, c: int) -> None:
        if u == v:
            return
        self.cap[u][v] = min(INF, self.cap[u].get(v, 0) + c)
        self.cap[v].setdefault(u, 0)

    def max_flow(self, s: int, t: int) -> int:
        """Run Edmonds-Karp; residual capacities are left in place."""
        self.original = [dict(row) for row in self.cap]
        res = self.cap
        total = 0
        while True:
            parent = {s: None}
            q = deque([s])
            while q and t not in parent:
                u = q.popleft()
                for v, c in res[u].items():
                    if c > 0 and v not in parent:
                        parent[v] = u
                        q.append(v)
            if t not in parent:
                return total
            # bottleneck along the augmenting path
            push = INF
            v = t
            while parent[v] is not None:
                u = parent[v]
                push = min(push, res[u][v])
                v = u
            v = t
            while parent[v] is not None:
                u = parent[v]
                res[u][v] -= push
                res[v][u] += push
                v = u
            total += push
            if total >= INF:
                return total

    def sink_side(self, t: int) -> set[int]:
        """Nodes that can still reach ``t`` in the residual graph."""
        side = {t}
        q = deque([t])
        while q:
            v = q.popleft()
            for u in self._rev(v):
                if u not in side and self.cap[u].get(v, 0) > 0:
                    side.add(u)
                    q.append(u)
        return side

    def _rev(self, v: int):
        # every edge has a reverse entry, so neighbours are symmetric
        return self.cap[v].keys()

    def cut_edges(self, t: int) -> list[tuple[int, int]]:
        """Saturated edges entering the sink side of a minimum cut."""
        side = self.sink_side(t)
        return sorted(
            (u, v)
            for u, row in enumerate(self.original)
            if u not in side
            for v, c in row.items()
            if c > 0 and v in side
        )
