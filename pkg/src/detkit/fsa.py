"""Labeled finite-state automata and state estimation.

An :class:`Fsa` is immutable. States and events are referred to by their
integer position; names are kept for I/O. An event labeled ``None`` is
unobservable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import graph

Transition = tuple[int, int, int]  # (source, event, target)


class ModelError(ValueError):
    """Malformed or inconsistent automaton description."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Fsa:
    states: tuple[str, ...]
    events: tuple[str, ...]
    labels: tuple[str | None, ...]
    initial: frozenset[int]
    transitions: tuple[Transition, ...]
    controllable: frozenset[int] = frozenset()
    faulty: frozenset[int] = frozenset()
    alphabet: tuple[str, ...] = ()
    # individually controllable transitions, on top of controllable events
    controllable_extra: frozenset[Transition] = frozenset()

    def __post_init__(self):
        n, m = len(self.states), len(self.events)
        if len(set(self.states)) != n:
            raise ModelError("duplicate state name")
        if len(set(self.events)) != m:
            raise ModelError("duplicate event name")
        if len(self.labels) != m:
            raise ModelError("one label per event expected")
        for x in self.initial:
            if not 0 <= x < n:
                raise ModelError(f"initial state {x} out of range")
        for e in self.controllable | self.faulty:
            if not 0 <= e < m:
                raise ModelError(f"event {e} out of range")
        trans = tuple(sorted(set(self.transitions)))
        for x, e, y in trans:
            if not (0 <= x < n and 0 <= y < n and 0 <= e < m):
                raise ModelError(f"transition {(x, e, y)} out of range")
        if not self.controllable_extra <= set(trans):
            raise ModelError("controllable transition not in the model")
        used = {lab for lab in self.labels if lab is not None}
        object.__setattr__(self, "transitions", trans)
        object.__setattr__(self, "alphabet", tuple(sorted(used | set(self.alphabet))))

    @classmethod
    def build(
        cls,
        states: Sequence[str],
        initial: Iterable[str],
        events: Mapping[str, str | None],
        transitions: Iterable[tuple[str, str, str]],
        controllable: Iterable[str] = (),
        faulty: Iterable[str] = (),
        alphabet: Iterable[str] = (),
        controllable_transitions: Iterable[tuple[str, str, str]] = (),
    ) -> "Fsa":
        """Construct from names; ``events`` maps event name to label."""
        states = tuple(states)
        if len(set(states)) != len(states):
            raise ModelError("duplicate state name")
        sidx = {s: i for i, s in enumerate(states)}
        names = tuple(events)
        eidx = {e: i for i, e in enumerate(names)}

        def st(s):
            if s not in sidx:
                raise ModelError(f"undeclared state {s!r}")
            return sidx[s]

        def ev(e):
            if e not in eidx:
                raise ModelError(f"undeclared event {e!r}")
            return eidx[e]

        trans = [(st(x), ev(e), st(y)) for x, e, y in transitions]
        extra = frozenset((st(x), ev(e), st(y)) for x, e, y in controllable_transitions)
        return cls(
            states=states,
            events=names,
            labels=tuple(events[e] for e in names),
            initial=frozenset(st(s) for s in initial),
            transitions=tuple(trans),
            controllable=frozenset(ev(e) for e in controllable),
            faulty=frozenset(ev(e) for e in faulty),
            alphabet=tuple(alphabet),
            controllable_extra=extra,
        )

    # -- basic queries ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.states)

    def observable(self, event: int) -> bool:
        return self.labels[event] is not None

    def state_index(self, name: str) -> int:
        try:
            return self.states.index(name)
        except ValueError:
            raise ModelError(f"unknown state {name!r}") from None

    def event_index(self, name: str) -> int:
        try:
            return self.events.index(name)
        except ValueError:
            raise ModelError(f"unknown event {name!r}") from None

    def transition_index(self, name: tuple[str, str, str]) -> Transition:
        x, e, y = name
        t = (self.state_index(x), self.event_index(e), self.state_index(y))
        if t not in set(self.transitions):
            raise ModelError(f"no transition {x} {e} {y}")
        return t

    def transition_name(self, t: Transition) -> tuple[str, str, str]:
        return (self.states[t[0]], self.events[t[1]], self.states[t[2]])

    @cached_property
    def out(self) -> list[list[tuple[int, int]]]:
        """``out[x]`` lists ``(event, target)`` pairs."""
        res: list[list[tuple[int, int]]] = [[] for _ in self.states]
        for x, e, y in self.transitions:
            res[x].append((e, y))
        return res

    @cached_property
    def eps_out(self) -> list[list[int]]:
        res: list[list[int]] = [[] for _ in self.states]
        for x, e, y in self.transitions:
            if self.labels[e] is None:
                res[x].append(y)
        return res

    @cached_property
    def obs_out(self) -> list[dict[str, list[tuple[int, int]]]]:
        """``obs_out[x][label]`` lists ``(event, target)`` pairs."""
        res: list[dict[str, list[tuple[int, int]]]] = [{} for _ in self.states]
        for x, e, y in self.transitions:
            lab = self.labels[e]
            if lab is not None:
                res[x].setdefault(lab, []).append((e, y))
        return res

    @cached_property
    def succ(self) -> list[list[int]]:
        return [sorted({y for _, y in outs}) for outs in self.out]

    @cached_property
    def controllable_transitions(self) -> frozenset[Transition]:
        return frozenset(
            t for t in self.transitions if t[1] in self.controllable
        ) | self.controllable_extra

    @property
    def normal(self) -> frozenset[int]:
        return frozenset(range(len(self.events))) - self.faulty

    def without(self, disabled: Iterable[Transition]) -> "Fsa":
        """The same automaton with some transitions removed."""
        drop = set(disabled)
        return Fsa(
            states=self.states,
            events=self.events,
            labels=self.labels,
            initial=self.initial,
            transitions=tuple(t for t in self.transitions if t not in drop),
            controllable=self.controllable,
            faulty=self.faulty,
            alphabet=self.alphabet,
            controllable_extra=self.controllable_extra - drop,
        )

    def induced(self, keep: Iterable[int]) -> "Fsa":
        """Sub-automaton on ``keep``, renumbered in the original order."""
        keep = sorted(set(keep))
        new = {x: i for i, x in enumerate(keep)}
        trans = tuple(
            (new[x], e, new[y]) for x, e, y in self.transitions if x in new and y in new
        )
        return Fsa(
            states=tuple(self.states[x] for x in keep),
            events=self.events,
            labels=self.labels,
            initial=frozenset(new[x] for x in self.initial if x in new),
            transitions=trans,
            controllable=self.controllable,
            faulty=self.faulty,
            alphabet=self.alphabet,
            controllable_extra=frozenset(
                (new[x], e, new[y]) for x, e, y in self.controllable_extra
                if x in new and y in new
            ),
        )


# -- state estimation --------------------------------------------------------


def eps_closure(a: Fsa, states: Iterable[int]) -> frozenset[int]:
    return frozenset(graph.reach(states, a.eps_out))


def post(a: Fsa, states: Iterable[int], symbol: str) -> frozenset[int]:
    """States reached by one occurrence of ``symbol`` and trailing silent moves."""
    step = {y for x in states for _, y in a.obs_out[x].get(symbol, ())}
    return eps_closure(a, step)


def _check_word(a: Fsa, word: Sequence[str]) -> None:
    alpha = set(a.alphabet)
    for sym in word:
        if sym not in alpha:
            raise ValueError(f"symbol {sym!r} not in alphabet")


@dataclass(frozen=True)
class StateEstimate:
    states: frozenset[int]
    prefix: tuple[str, ...]
    suffix: tuple[str, ...] | None = None

    def names(self, a: Fsa) -> list[str]:
        return sorted(a.states[x] for x in self.states)


def state_estimate(a: Fsa, word: Sequence[str]) -> StateEstimate:
    """States consistent with having observed exactly ``word``.

    Empty when the word is not generated.
    """
    _check_word(a, word)
    cur = eps_closure(a, a.initial)
    for sym in word:
        cur = post(a, cur, sym)
    return StateEstimate(cur, tuple(word))


def generators(a: Fsa, states: Iterable[int], word: Sequence[str]) -> frozenset[int]:
    """Members of ``states`` from which ``word`` can be generated."""
    res = set()
    for x in states:
        cur = eps_closure(a, [x])
        for sym in word:
            if not cur:
                break
            cur = post(a, cur, sym)
        if cur:
            res.add(x)
    return frozenset(res)


def delayed_state_estimate(
    a: Fsa, prefix: Sequence[str], suffix: Sequence[str]
) -> StateEstimate:
    """States reached after ``prefix`` that can go on to generate ``suffix``."""
    _check_word(a, suffix)
    base = state_estimate(a, prefix).states
    return StateEstimate(generators(a, base, suffix), tuple(prefix), tuple(suffix))


# -- structure ---------------------------------------------------------------


def accessible_part(a: Fsa) -> Fsa:
    return a.induced(graph.reach(a.initial, a.succ))


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple[frozenset[int], ...]
    component_of: tuple[int, ...]
    dag: frozenset[tuple[int, int]] = field(default_factory=frozenset)


def scc_decomposition(a: Fsa) -> SccDecomposition:
    comps = graph.tarjan_scc(a.succ)
    comp_of = graph.component_map(comps, a.n)
    dag = {
        (comp_of[x], comp_of[y])
        for x, _, y in a.transitions
        if comp_of[x] != comp_of[y]
    }
    return SccDecomposition(
        tuple(frozenset(c) for c in comps), tuple(comp_of), frozenset(dag)
    )


def states_in_observable_cycles(a: Fsa) -> frozenset[int]:
    """States on some cycle that emits at least one observable symbol."""
    comp_of = graph.component_map(graph.tarjan_scc(a.succ), a.n)
    hot = {
        comp_of[x]
        for x, e, y in a.transitions
        if a.labels[e] is not None and comp_of[x] == comp_of[y]
    }
    return frozenset(x for x in range(a.n) if comp_of[x] in hot)


def live_states(a: Fsa) -> frozenset[int]:
    """States from which an infinitely observable run exists."""
    pred = graph.reverse(a.succ)
    return frozenset(graph.reach(states_in_observable_cycles(a), pred))


@dataclass(frozen=True)
class Assumption1Report:
    deadlock_free: bool
    prompt: bool
    deadlocks: frozenset[int]
    silent_cycle_states: frozenset[int]

    @property
    def holds(self) -> bool:
        return self.deadlock_free and self.prompt


def check_assumption1(a: Fsa) -> Assumption1Report:
    """Deadlock-freeness and absence of unobservable cycles."""
    dead = frozenset(x for x in range(a.n) if not a.out[x])
    comps = graph.tarjan_scc(a.eps_out)
    comp_of = graph.component_map(comps, a.n)
    silent = set()
    for x in range(a.n):
        for y in a.eps_out[x]:
            if comp_of[x] == comp_of[y]:
                silent |= set(comps[comp_of[x]])
    return Assumption1Report(not dead, not silent, dead, frozenset(silent))
