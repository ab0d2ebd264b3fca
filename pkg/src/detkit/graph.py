"""Small digraph helpers over integer vertices.

Vertices are ``0..n-1`` and a graph is a list of successor lists.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

Adjacency = Sequence[Sequence[int]]


def reverse(succ: Adjacency) -> list[list[int]]:
    pred: list[list[int]] = [[] for _ in succ]
    for u, vs in enumerate(succ):
        for v in vs:
            pred[v].append(u)
    return pred


def reach(starts: Iterable[int], succ: Adjacency) -> set[int]:
    """Vertices reachable from ``starts`` (reflexive)."""
    seen = set(starts)
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def tarjan_scc(succ: Adjacency) -> list[list[int]]:
    """Strongly connected components, iterative Tarjan.

    Components come out in reverse topological order (sinks first),
    each sorted ascending.
    """
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        # frames hold (vertex, position in its successor list)
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            u, i = work[-1]
            if i < len(succ[u]):
                work[-1] = (u, i + 1)
                v = succ[u][i]
                if index[v] == -1:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                    work.append((v, 0))
                elif on_stack[v]:
                    low[u] = min(low[u], index[v])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
            if low[u] == index[u]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == u:
                        break
                comps.append(sorted(comp))
    return comps


def component_map(comps: Sequence[Sequence[int]], n: int) -> list[int]:
    comp_of = [0] * n
    for c, members in enumerate(comps):
        for v in members:
            comp_of[v] = c
    return comp_of


def bfs_path(starts: Iterable[int], succ, goal) -> list | None:
    """Shortest path from any start to a vertex satisfying ``goal``.

    ``succ(u)`` yields ``(label, v)`` pairs. Returns the list of
    ``(u, label, v)`` steps, ``[]`` if a start already satisfies the goal,
    or ``None`` when no goal vertex is reachable.
    """
    parent: dict = {}
    queue = deque()
    for s in starts:
        if s in parent:
            continue
        parent[s] = None
        if goal(s):
            return []
        queue.append(s)
    while queue:
        u = queue.popleft()
        for label, v in succ(u):
            if v in parent:
                continue
            parent[v] = (u, label)
            if goal(v):
                steps = []
                while parent[v] is not None:
                    pu, lab = parent[v]
                    steps.append((pu, lab, v))
                    v = pu
                steps.reverse()
                return steps
            queue.append(v)
    return None
