"""Counterexample runs and an independent replay check.

A witness is a run of several synchronized copies of the automaton, cut
into segments. Each segment has a kind that constrains how many sync steps
it contains or what shape it has. :func:`replay` rechecks every claim
against the automaton alone, without the composition that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .fsa import Fsa, Transition

KINDS = ("any", "pump", "some-obs", "one-obs", "fault", "left-cycle")


@dataclass(frozen=True)
class Segment:
    kind: str
    start: tuple[int, ...]
    steps: tuple[tuple[tuple[int, ...], tuple, tuple[int, ...]], ...] = ()

    @property
    def end(self) -> tuple[int, ...]:
        return self.steps[-1][2] if self.steps else self.start

    def sync_labels(self, a: Fsa) -> list[str]:
        return [a.labels[ev[0]] for _, ev, _ in self.steps if all(e is not None for e in ev)]


@dataclass(frozen=True)
class Witness:
    segments: tuple[Segment, ...]
    filter_after: int | None = None  # segment whose end holds the distinct pair
    spec: frozenset[tuple[int, int]] | None = None
    stem: tuple[Transition, ...] = ()
    loop: tuple[Transition, ...] = ()
    tail_component: int | None = None
    normal_right: bool = False

    @property
    def copies(self) -> int:
        return len(self.segments[0].start)

    def words(self, a: Fsa) -> tuple[list[str], list[str]]:
        """Observed prefix up to the filtered state, and the rest."""
        cut = len(self.segments) if self.filter_after is None else self.filter_after + 1
        pre = [s for seg in self.segments[:cut] for s in seg.sync_labels(a)]
        post = [s for seg in self.segments[cut:] for s in seg.sync_labels(a)]
        return pre, post

    def to_json(self, a: Fsa) -> dict[str, Any]:
        def ev_name(ev):
            return [a.events[e] if e is not None else "eps" for e in ev]

        def st_name(st):
            return [a.states[x] for x in st]

        def tr(t):
            return list(a.transition_name(t))

        pre, post = self.words(a)
        return {
            "segments": [
                {
                    "kind": seg.kind,
                    "start": st_name(seg.start),
                    "steps": [
                        {"from": st_name(u), "events": ev_name(ev), "to": st_name(v)}
                        for u, ev, v in seg.steps
                    ],
                }
                for seg in self.segments
            ],
            "filter_after": self.filter_after,
            "prefix_word": pre,
            "suffix_word": post,
            "stem": [tr(t) for t in self.stem],
            "loop": [tr(t) for t in self.loop],
            "tail_component": self.tail_component,
        }


def _check_step(a: Fsa, trans: set, u, ev, v, normal_right: bool) -> str | None:
    if not (len(u) == len(ev) == len(v)):
        return "arity mismatch"
    moving = [i for i, e in enumerate(ev) if e is not None]
    for i in range(len(u)):
        if ev[i] is None:
            if u[i] != v[i]:
                return f"idle component {i} changed state"
        elif (u[i], ev[i], v[i]) not in trans:
            return f"component {i}: no transition {(u[i], ev[i], v[i])}"
    if not moving:
        return "empty step"
    if len(moving) == len(ev):
        labs = {a.labels[e] for e in ev}
        if None in labs or len(labs) != 1:
            return "sync step with unequal or silent labels"
    elif len(moving) != 1 or a.labels[ev[moving[0]]] is not None:
        return "silent step must move exactly one component unobservably"
    if normal_right and ev[1] is not None and ev[1] in a.faulty:
        return "right copy used a faulty event"
    return None


def replay(a: Fsa, w: Witness) -> list[str]:
    """Problems found while replaying ``w`` on ``a``; empty if valid."""
    errs: list[str] = []
    trans = set(a.transitions)
    first = w.segments[0].start
    if any(x not in a.initial for x in first):
        errs.append("run does not start in initial states")
    cur = first
    for k, seg in enumerate(w.segments):
        if seg.start != cur:
            errs.append(f"segment {k} is not connected")
        for u, ev, v in seg.steps:
            if u != cur:
                errs.append(f"segment {k}: broken step chain")
            msg = _check_step(a, trans, u, ev, v, w.normal_right)
            if msg:
                errs.append(f"segment {k}: {msg}")
            cur = v
        n_sync = len(seg.sync_labels(a))
        if seg.kind == "pump" and (n_sync < 1 or seg.start != seg.end):
            errs.append(f"segment {k}: not a cycle with an observation")
        elif seg.kind == "some-obs" and n_sync < 1:
            errs.append(f"segment {k}: no observation")
        elif seg.kind == "one-obs" and n_sync != 1:
            errs.append(f"segment {k}: expected exactly one observation")
        elif seg.kind == "fault":
            if not seg.steps or seg.steps[-1][1][0] is None or seg.steps[-1][1][0] not in a.faulty:
                errs.append(f"segment {k}: does not end with a faulty move")
        elif seg.kind == "left-cycle":
            if seg.start != seg.end or not any(ev[0] is not None for _, ev, _ in seg.steps):
                errs.append(f"segment {k}: not a cycle moving the left copy")
    if w.filter_after is not None:
        x, y = w.segments[w.filter_after].end[:2]
        if w.spec is not None:
            if (x, y) not in w.spec and (y, x) not in w.spec:
                errs.append("filtered pair is not a specified pair")
        elif x == y:
            errs.append("filtered pair is not distinct")
    if w.tail_component is not None:
        x = cur[w.tail_component]
        for t in w.stem:
            if t not in trans or t[0] != x:
                errs.append("stem is not a run from the final state")
                break
            x = t[2]
        if not w.loop or w.loop[0][0] != x or w.loop[-1][2] != x:
            errs.append("loop does not close at the end of the stem")
        else:
            y = x
            for t in w.loop:
                if t not in trans or t[0] != y:
                    errs.append("loop is not a run")
                    break
                y = t[2]
            if all(a.labels[t[1]] is None for t in w.loop):
                errs.append("loop has no observation")
    return errs
