"""Assembling witnesses from layered state sets."""

from __future__ import annotations

from .fsa import Fsa, states_in_observable_cycles
from .product import ONE_OBS, Pattern, ProductView, automaton_lasso, segment
from .witness import Segment, Witness


class _Chain:
    """Incrementally built run through a product view."""

    def __init__(self, view: ProductView):
        self.view = view
        self.segments: list[Segment] = []
        self.cur: int | None = None

    def extend(self, kind: str, starts, pattern: Pattern, goal) -> None:
        steps = segment(self.view, starts, pattern, goal)
        if steps is None:
            raise AssertionError(f"layer invariant broken: no {kind} segment")
        start = steps[0][0] if steps else min(s for s in starts if goal(s))
        st = self.view.states
        self.segments.append(
            Segment(kind, st[start], tuple((st[u], ev, st[v]) for u, ev, v in steps))
        )
        self.cur = steps[-1][2] if steps else start

    def follow(self, kind: str, pattern: Pattern, goal) -> None:
        self.extend(kind, [self.cur], pattern, goal)

    def suffix(self, layers: dict[int, set[int]], lo: int, hi: int) -> None:
        """One observation per layer from ``lo + 1`` up to ``hi``."""
        for i in range(lo + 1, hi + 1):
            target = layers[i]
            self.follow("one-obs", ONE_OBS, target.__contains__)


def _swap(seg: Segment) -> Segment:
    def s(t):
        return (t[1], t[0]) + tuple(t[2:])

    return Segment(seg.kind, s(seg.start), tuple((s(u), s(ev), s(v)) for u, ev, v in seg.steps))


def finish(
    a: Fsa,
    chain: _Chain,
    filter_after: int | None,
    live: frozenset[int] | None,
    spec=None,
    prefer: tuple[int, ...] = (0, 1),
) -> Witness:
    """Build the witness, attaching an infinite tail when ``live`` is given.

    For two copies the tail always hangs off the left one; the run is
    mirrored when only the right copy can continue.
    """
    segs = list(chain.segments)
    stem = loop = ()
    tail = None
    if live is not None:
        end = segs[-1].end
        tail = next(c for c in prefer if end[c] in live)
        if len(end) == 2 and tail == 1:
            segs = [_swap(s) for s in segs]
            tail = 0
        x = segs[-1].end[tail]
        stem, loop = automaton_lasso(a, x, states_in_observable_cycles(a))
        stem = tuple((u, e, v) for u, e, v in stem)
        loop = tuple((u, e, v) for u, e, v in loop)
    return Witness(
        segments=tuple(segs),
        filter_after=filter_after,
        spec=spec,
        stem=stem,
        loop=loop,
        tail_component=tail,
    )
