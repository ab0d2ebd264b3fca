"""Synchronized products of copies of one automaton, seen through two letters.

A product state is a tuple of component states. A step either moves every
component on one observable label (a *sync* step) or moves a single
component along an unobservable transition. Sync steps play the role of
the observable letter, everything else is silent.

The verifiers work on these views with set-valued pre-images and turn the
resulting layers back into concrete runs with :func:`segment`.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import product as cartesian
from typing import Callable, Iterable

from . import graph
from .composition import ConcurrentComposition, PairEvent
from .fsa import Fsa

Events = tuple  # per-component event id or None


def is_sync(ev: Events) -> bool:
    return all(e is not None for e in ev)


class ProductView:
    def __init__(self, a: Fsa, states, initial, out):
        self.a = a
        self.states: list[tuple[int, ...]] = list(states)
        self.initial: frozenset[int] = frozenset(initial)
        self.out: list[list[tuple[Events, int]]] = out

    @classmethod
    def of_composition(cls, cc: ConcurrentComposition) -> "ProductView":
        return cls(cc.source, cc.states, cc.initial, cc.out)

    @property
    def n(self) -> int:
        return len(self.states)

    @cached_property
    def obs_succ(self) -> list[list[int]]:
        return [sorted({q for ev, q in outs if is_sync(ev)}) for outs in self.out]

    @cached_property
    def eps_succ(self) -> list[list[int]]:
        return [sorted({q for ev, q in outs if not is_sync(ev)}) for outs in self.out]

    @cached_property
    def any_succ(self) -> list[list[int]]:
        return [sorted({q for _, q in outs}) for outs in self.out]

    @cached_property
    def obs_pred(self) -> list[list[int]]:
        return graph.reverse(self.obs_succ)

    @cached_property
    def eps_pred(self) -> list[list[int]]:
        return graph.reverse(self.eps_succ)

    @cached_property
    def any_pred(self) -> list[list[int]]:
        return graph.reverse(self.any_succ)

    # -- pre-images -------------------------------------------------------

    def back_eps(self, target: Iterable[int]) -> set[int]:
        return graph.reach(target, self.eps_pred)

    def back_any(self, target: Iterable[int]) -> set[int]:
        return graph.reach(target, self.any_pred)

    def pre_obs(self, target: Iterable[int]) -> set[int]:
        return {u for v in target for u in self.obs_pred[v]}

    def pre_hat_eps(self, target: Iterable[int]) -> set[int]:
        """States with a sync step followed by silent steps into ``target``."""
        return self.pre_obs(self.back_eps(target))

    def pre_one(self, target: Iterable[int]) -> set[int]:
        """Like :meth:`pre_hat_eps` but silent steps may also come first."""
        return self.back_eps(self.pre_hat_eps(target))

    def pre_some(self, target: Iterable[int]) -> set[int]:
        """States with a path into ``target`` containing at least one sync step."""
        return self.back_any(self.pre_obs(self.back_any(target)))

    @cached_property
    def pump_states(self) -> frozenset[int]:
        """States lying on a cycle that contains a sync step."""
        comps = graph.tarjan_scc(self.any_succ)
        comp_of = graph.component_map(comps, self.n)
        hot = {
            comp_of[p]
            for p, outs in enumerate(self.out)
            for ev, q in outs
            if is_sync(ev) and comp_of[p] == comp_of[q]
        }
        return frozenset(p for p in range(self.n) if comp_of[p] in hot)

    def live(self, live_states: frozenset[int]) -> set[int]:
        """Product states with at least one component in ``live_states``."""
        return {p for p, st in enumerate(self.states) if any(x in live_states for x in st)}

    def names(self, p: int) -> tuple[str, ...]:
        return tuple(self.a.states[x] for x in self.states[p])


@lru_cache(maxsize=32)
def synchronized_product(a: Fsa, copies: int) -> ProductView:
    """Reachable product of ``copies`` copies of ``a``."""
    init = sorted(cartesian(sorted(a.initial), repeat=copies))
    order = list(init)
    index = {p: i for i, p in enumerate(order)}
    out: list[list[tuple[Events, int]]] = []
    i = 0
    while i < len(order):
        st = order[i]
        moves = []
        labs = set(a.obs_out[st[0]])
        for x in st[1:]:
            labs &= a.obs_out[x].keys()
        for lab in sorted(labs):
            for combo in cartesian(*(a.obs_out[x][lab] for x in st)):
                moves.append((tuple(e for e, _ in combo), tuple(y for _, y in combo)))
        for c, x in enumerate(st):
            for e, y in a.out[x]:
                if a.labels[e] is None:
                    ev = tuple(e if j == c else None for j in range(copies))
                    moves.append((ev, st[:c] + (y,) + st[c + 1 :]))
        row = []
        for ev, q in moves:
            j = index.get(q)
            if j is None:
                j = index[q] = len(order)
                order.append(q)
            row.append((ev, j))
        out.append(row)
        i += 1
    return ProductView(a, order, [index[p] for p in init], out)


# -- run segments ------------------------------------------------------------

# A pattern is (start phase, accepting phases, step function). The step
# function maps (phase, events) to the next phase, or None to forbid.

Pattern = tuple[int, frozenset, Callable[[int, Events], "int | None"]]


def _any(ph, ev):
    return 0


def _one_obs(ph, ev):
    if is_sync(ev):
        return 1 if ph == 0 else None
    return ph


def _some_obs(ph, ev):
    return 1 if is_sync(ev) else ph


def _left_moves(ph, ev):
    return 1 if ev[0] is not None else ph


ANY: Pattern = (0, frozenset({0}), _any)
ONE_OBS: Pattern = (0, frozenset({1}), _one_obs)
SOME_OBS: Pattern = (0, frozenset({1}), _some_obs)
LEFT_MOVES: Pattern = (0, frozenset({1}), _left_moves)


def fault_pattern(faulty: frozenset[int]) -> Pattern:
    """Any path whose last step moves the left copy on a faulty event."""

    def step(ph, ev):
        if ph == 1:
            return None
        return 1 if ev[0] is not None and ev[0] in faulty else 0

    return (0, frozenset({1}), step)


Step = tuple[int, Events, int]


def segment(
    view: ProductView,
    starts: Iterable[int],
    pattern: Pattern,
    goal: Callable[[int], bool],
    allow_empty: bool = True,
) -> list[Step] | None:
    """Shortest run matching ``pattern`` from ``starts`` to a goal state."""
    ph0, accept, step = pattern

    def succ(node):
        p, ph = node
        for ev, q in view.out[p]:
            nph = step(ph, ev)
            if nph is not None:
                yield ev, (q, nph)

    def is_goal(node):
        return node[1] in accept and goal(node[0])

    starts = [(s, ph0) for s in sorted(starts)]
    if not allow_empty:
        # force at least one step by searching from the successors
        path = None
        best = None
        for s in starts:
            for ev, nxt in succ(s):
                rest = graph.bfs_path([nxt], succ, is_goal)
                if rest is not None and (best is None or len(rest) + 1 < best):
                    best = len(rest) + 1
                    path = [(s, ev, nxt)] + rest
        steps = path
    else:
        steps = graph.bfs_path(starts, succ, is_goal)
    if steps is None:
        return None
    return [(u[0], ev, v[0]) for u, ev, v in steps]


# -- runs of the automaton itself -----------------------------------------


def automaton_lasso(a: Fsa, start: int, cycle_states: frozenset[int]):
    """Stem from ``start`` to an observable cycle, and the cycle itself.

    Steps are ``(x, event, y)`` triples. Returns ``None`` if no such cycle
    is reachable.
    """

    def succ(x):
        return iter(a.out[x])

    stem = graph.bfs_path([start], succ, lambda x: x in cycle_states)
    if stem is None:
        return None
    c = stem[-1][2] if stem else start

    def succ2(node):
        x, ph = node
        for e, y in a.out[x]:
            yield e, (y, 1 if a.labels[e] is not None else ph)

    best = None
    for e, y in a.out[c]:
        nxt = (y, 1 if a.labels[e] is not None else 0)
        rest = graph.bfs_path([nxt], succ2, lambda n: n == (c, 1))
        if rest is not None and (best is None or len(rest) + 1 < len(best)):
            best = [((c, 0), e, nxt)] + rest
    loop = [(u[0], e, v[0]) for u, e, v in best]
    return stem, loop
