"""Self-compositions of an automaton and the two-letter observation view.

The concurrent composition pairs two copies of an automaton that agree on
every observed symbol. Each pair transition is a :class:`PairEvent`: both
copies move on equal observable labels, or one copy takes a silent step
while the other waits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

from . import graph
from .fsa import Fsa

HAT = "eps_hat"  # label of the observable letter in the two-letter view


class Kind(enum.Enum):
    SYNC = "sync"
    LEFT_EPS = "left-eps"
    RIGHT_EPS = "right-eps"


class PairEvent(NamedTuple):
    left: int | None
    right: int | None

    @property
    def kind(self) -> Kind:
        if self.left is None:
            return Kind.RIGHT_EPS
        if self.right is None:
            return Kind.LEFT_EPS
        return Kind.SYNC


class Variant(enum.Enum):
    STANDARD = "cc"
    NORMAL_RIGHT = "cc-tn"  # right copy restricted to normal events


Pair = tuple[int, int]


@dataclass(frozen=True, eq=False)
class ConcurrentComposition:
    source: Fsa
    variant: Variant
    states: tuple[Pair, ...]
    initial: frozenset[int]
    transitions: tuple[tuple[int, PairEvent, int], ...]

    @cached_property
    def index(self) -> dict[Pair, int]:
        return {p: i for i, p in enumerate(self.states)}

    @cached_property
    def out(self) -> list[list[tuple[PairEvent, int]]]:
        res: list[list[tuple[PairEvent, int]]] = [[] for _ in self.states]
        for p, ev, q in self.transitions:
            res[p].append((ev, q))
        return res

    @cached_property
    def obs_succ(self) -> list[list[int]]:
        return _dedup(self, lambda ev: ev.kind is Kind.SYNC)

    @cached_property
    def eps_succ(self) -> list[list[int]]:
        return _dedup(self, lambda ev: ev.kind is not Kind.SYNC)

    @property
    def n(self) -> int:
        return len(self.states)

    def pair_name(self, i: int) -> str:
        x, y = self.states[i]
        return f"({self.source.states[x]},{self.source.states[y]})"

    def event_name(self, ev: PairEvent) -> str:
        names = self.source.events
        left = names[ev.left] if ev.left is not None else "eps"
        right = names[ev.right] if ev.right is not None else "eps"
        return f"({left},{right})"

    def event_label(self, ev: PairEvent) -> str | None:
        if ev.kind is Kind.SYNC:
            return self.source.labels[ev.left]
        return None

    def to_fsa(self) -> Fsa:
        """The composition as a plain automaton over pair names."""
        events: dict[str, str | None] = {}
        for _, ev, _ in self.transitions:
            events.setdefault(self.event_name(ev), self.event_label(ev))
        return Fsa.build(
            states=[self.pair_name(i) for i in range(self.n)],
            initial=[self.pair_name(i) for i in sorted(self.initial)],
            events=events,
            transitions=[
                (self.pair_name(p), self.event_name(ev), self.pair_name(q))
                for p, ev, q in self.transitions
            ],
            alphabet=self.source.alphabet,
        )


def _dedup(cc: ConcurrentComposition, keep) -> list[list[int]]:
    return [sorted({q for ev, q in outs if keep(ev)}) for outs in cc.out]


def _pair_moves(a: Fsa, x: int, y: int, right_ok) -> list[tuple[PairEvent, Pair]]:
    moves = []
    left_obs, right_obs = a.obs_out[x], a.obs_out[y]
    for lab in sorted(left_obs.keys() & right_obs.keys()):
        for e1, x2 in left_obs[lab]:
            for e2, y2 in right_obs[lab]:
                if right_ok(e2):
                    moves.append((PairEvent(e1, e2), (x2, y2)))
    for e, x2 in a.out[x]:
        if a.labels[e] is None:
            moves.append((PairEvent(e, None), (x2, y)))
    for e, y2 in a.out[y]:
        if a.labels[e] is None and right_ok(e):
            moves.append((PairEvent(None, e), (x, y2)))
    return moves


@lru_cache(maxsize=128)
def concurrent_composition(
    a: Fsa, variant: Variant = Variant.STANDARD, full: bool = False
) -> ConcurrentComposition:
    """Pair composition of ``a`` with itself.

    By default only the part reachable from initial pairs is built. With
    ``full`` every pair of states is present.
    """
    if variant is Variant.NORMAL_RIGHT:
        normal = a.normal
        right_ok = normal.__contains__
    else:
        right_ok = lambda e: True  # noqa: E731
    init = sorted((x, y) for x in a.initial for y in a.initial)
    if full:
        order = [(x, y) for x in range(a.n) for y in range(a.n)]
    else:
        order = list(init)
    index = {p: i for i, p in enumerate(order)}
    trans = []
    i = 0
    while i < len(order):
        x, y = order[i]
        for ev, q in _pair_moves(a, x, y, right_ok):
            j = index.get(q)
            if j is None:
                j = index[q] = len(order)
                order.append(q)
            trans.append((i, ev, j))
        i += 1
    return ConcurrentComposition(
        source=a,
        variant=variant,
        states=tuple(order),
        initial=frozenset(index[p] for p in init),
        transitions=tuple(trans),
    )


def accessible(cc: ConcurrentComposition) -> ConcurrentComposition:
    """Restrict a composition to pairs reachable from initial pairs."""
    succ = [sorted({q for _, q in outs}) for outs in cc.out]
    keep = sorted(graph.reach(cc.initial, succ))
    new = {p: i for i, p in enumerate(keep)}
    return ConcurrentComposition(
        source=cc.source,
        variant=cc.variant,
        states=tuple(cc.states[p] for p in keep),
        initial=frozenset(new[p] for p in cc.initial),
        transitions=tuple(
            (new[p], ev, new[q]) for p, ev, q in cc.transitions if p in new and q in new
        ),
    )


def observation_automaton(a: Fsa) -> Fsa:
    """Two-letter abstraction of ``a``.

    Between two states there is an ``eps_hat`` edge when some observable
    transition connects them, and an unobservable edge when all connecting
    transitions are unobservable.
    """
    has_obs: set[tuple[int, int]] = set()
    has_eps: set[tuple[int, int]] = set()
    for x, e, y in a.transitions:
        (has_eps if a.labels[e] is None else has_obs).add((x, y))
    trans = [(x, 1, y) for x, y in has_obs]
    trans += [(x, 0, y) for x, y in has_eps - has_obs]
    return Fsa(
        states=a.states,
        events=("silent", "hat"),
        labels=(None, HAT),
        initial=a.initial,
        transitions=tuple(trans),
    )
