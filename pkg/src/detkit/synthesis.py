"""Enforcing detectability by disabling controllable transitions.

The pair composition is unrolled into layers that mirror the structure a
violation must have: observations before the ambiguous pair, the pair
itself, the observations after it and (for infinite behaviors) a cycle in
the automaton. Every violation is then a path from the initial pairs to a
sink. A minimum cut whose edges are removable picks transitions to
disable; the result is re-verified and the procedure repeats until the
property holds.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

from . import graph
from .composition import Kind, concurrent_composition
from .delayed import effective_delay, verify_omega_k_delayed, verify_star_k_delayed
from .flow import INF, FlowNetwork
from .fsa import Fsa, Transition, live_states
from .k1k2 import k1_bound_for_delayed, verify_omega_k1k2, verify_star_k1k2
from .verdict import Verdict

TARGETS = ("omega-k1k2", "star-k1k2", "omega-k-delayed", "star-k-delayed")


@dataclass(frozen=True)
class Target:
    property: str
    k1: int = 0
    k2: int = 0
    k: int = 0

    def __post_init__(self):
        if self.property not in TARGETS:
            raise ValueError(f"cannot synthesize for {self.property!r}")
        if min(self.k1, self.k2, self.k) < 0:
            raise ValueError("parameters must be non-negative")

    @property
    def omega(self) -> bool:
        return self.property.startswith("omega")

    def verify(self, a: Fsa) -> Verdict:
        if self.property == "omega-k1k2":
            return verify_omega_k1k2(a, self.k1, self.k2)
        if self.property == "star-k1k2":
            return verify_star_k1k2(a, self.k1, self.k2)
        if self.property == "omega-k-delayed":
            return verify_omega_k_delayed(a, self.k)
        return verify_star_k_delayed(a, self.k)

    def windows(self, a: Fsa) -> tuple[int, int]:
        """(k1, k2) used to build the layered graph."""
        if self.property.endswith("delayed"):
            return k1_bound_for_delayed(a), effective_delay(a, self.k)
        return self.k1, self.k2


@dataclass
class SynthesisPlan:
    target: Target
    feasible: bool
    disabled: tuple[Transition, ...]
    residual: Fsa
    verdict: Verdict
    method: str
    iterations: int = 0
    notes: list[str] = field(default_factory=list)

    def to_json(self, a: Fsa) -> dict[str, Any]:
        from .io import fsa_to_dict

        return {
            "property": self.target.property,
            "params": _params(self.target),
            "feasible": self.feasible,
            "method": self.method,
            "iterations": self.iterations,
            "disabled": [list(a.transition_name(t)) for t in self.disabled],
            "residual_holds": self.verdict.holds,
            "residual": fsa_to_dict(self.residual),
        }


def _params(t: Target) -> dict[str, int]:
    if t.property.endswith("delayed"):
        return {"K": t.k}
    return {"k1": t.k1, "k2": t.k2}


# -- layered graph -------------------------------------------------------

Node = tuple  # (layer, pair index), ("S", state) or ("sink",)
SINK: Node = ("sink",)


@dataclass
class LayeredWitnessGraph:
    """Layers of pair states whose source-to-sink paths are violations.

    ``edges`` carry, for each underlying step, the controllable
    transitions whose removal blocks it (an empty list means the step
    cannot be blocked).
    """

    k1: int
    k2: int
    omega: bool
    sources: list[Node]
    nodes: dict[int, set[int]]
    marked: dict[int, set[int]]
    s_states: set[int]
    edges: list[tuple[Node, Node, list[Transition]]]

    def pair_layers(self, a: Fsa) -> dict[int, tuple[set[tuple[str, str]], set[tuple[str, str]]]]:
        """Layer -> (state names, marked state names)."""
        cc = concurrent_composition(a)

        def nm(p):
            x, y = cc.states[p]
            return (a.states[x], a.states[y])

        return {i: ({nm(p) for p in self.nodes[i]}, {nm(p) for p in self.marked[i]}) for i in self.nodes}

    @property
    def empty(self) -> bool:
        return not self.edges


def build_layered_witness_graph(a: Fsa, k1: int, k2: int, omega: bool) -> LayeredWitnessGraph:
    cc = concurrent_composition(a)
    distinct = {p for p, (x, y) in enumerate(cc.states) if x != y}
    sync_succ, eps_succ = cc.obs_succ, cc.eps_succ
    any_succ = [sorted(set(o) | set(e)) for o, e in zip(sync_succ, eps_succ)]
    top = k1 + k2

    # layers before the ambiguous pair accept any steps, later ones only
    # silent steps between observations
    nodes: dict[int, set[int]] = {}
    marked: dict[int, set[int]] = {}
    if k1 == 0:
        nodes[0] = set(range(cc.n))
        marked[0] = set(distinct)
    else:
        before = graph.reach(cc.initial, any_succ)
        nodes[1] = set(range(cc.n))
        marked[1] = graph.reach({q for p in before for q in sync_succ[p]}, any_succ)
        if k1 == 1:
            marked[1] &= distinct
    for i in range(2, k1 + 1):
        entry = {q for p in marked[i - 1] for q in sync_succ[p]}
        nodes[i] = graph.reach(entry, any_succ)
        marked[i] = nodes[i] & distinct if i == k1 else set(nodes[i])
    armed = {k1: graph.reach(marked[k1], eps_succ)}
    for i in range(k1 + 1, top + 1):
        src = armed.get(i - 1, marked[i - 1])
        nodes[i] = graph.reach({q for p in src for q in sync_succ[p]}, eps_succ)
        marked[i] = set(nodes[i])
    for i in marked:
        armed.setdefault(i, marked[i])

    live = live_states(a) if omega else frozenset()
    goals = marked[top]
    if omega:
        goals = {p for p in goals if any(x in live for x in cc.states[p])}

    ctl = a.controllable_transitions
    edges: list[tuple[Node, Node, list[Transition]]] = []

    def parts(p, ev, q) -> list[Transition]:
        (x, y), (x2, y2) = cc.states[p], cc.states[q]
        res = []
        if ev.left is not None:
            res.append((x, ev.left, x2))
        if ev.right is not None:
            res.append((y, ev.right, y2))
        return [t for t in res if t in ctl]

    lo = 0 if k1 == 0 else 1
    for i in range(lo, top + 1):
        prefix = i <= k1
        for p in sorted(nodes[i]):
            for ev, q in cc.out[p]:
                sync = ev.kind is Kind.SYNC
                if sync and i < top and p in armed[i]:
                    edges.append(((i, p), (i + 1, q), parts(p, ev, q)))
                if (prefix or not sync) and q in nodes[i]:
                    edges.append(((i, p), (i, q), parts(p, ev, q)))

    s_states: set[int] = set()
    if not omega:
        edges += [((top, p), SINK, []) for p in sorted(goals)]
    else:
        for p in sorted(goals):
            for x in sorted(set(cc.states[p]) & live):
                edges.append(((top, p), ("S", x), []))
        s_states = graph.reach({x for p in goals for x in cc.states[p] if x in live}, a.succ)
        comp_of = graph.component_map(graph.tarjan_scc(a.succ), a.n)
        for x in sorted(s_states):
            for e, y in a.out[x]:
                t = (x, e, y)
                cand = [t] if t in ctl else []
                edges.append((("S", x), ("S", y), cand))
                if a.labels[e] is not None and comp_of[x] == comp_of[y]:
                    edges.append((("S", x), SINK, cand))

    # keep only what can still reach the sink
    pred: dict[Node, list[Node]] = {}
    for u, v, _ in edges:
        pred.setdefault(v, []).append(u)
    useful = {SINK}
    todo = [SINK]
    while todo:
        v = todo.pop()
        for u in pred.get(v, ()):
            if u not in useful:
                useful.add(u)
                todo.append(u)
    edges = [e for e in edges if e[0] in useful and e[1] in useful]
    for i in nodes:
        nodes[i] = {p for p in nodes[i] if (i, p) in useful}
        marked[i] &= nodes[i]
    sources = [(lo, p) for p in sorted(cc.initial) if (lo, p) in useful]
    s_states = {x for x in s_states if ("S", x) in useful}
    return LayeredWitnessGraph(k1, k2, omega, sources, nodes, marked, s_states, edges)


def cut_transitions(a: Fsa, k1: int, k2: int, omega: bool) -> set[Transition] | None:
    """Transitions whose removal cuts every layered violation path.

    ``None`` when every cut would need an uncontrollable edge.
    """
    g = build_layered_witness_graph(a, k1, k2, omega)
    net = FlowNetwork()
    src, sink = net.node("source"), net.node(SINK)
    arcs: dict[tuple[int, int], list[list[Transition]]] = {}
    for s in g.sources:
        net.add_edge(src, net.node(s), INF)
    for u, v, cands in g.edges:
        iu, iv = net.node(u), net.node(v)
        net.add_edge(iu, iv, 1 if cands else INF)
        arcs.setdefault((iu, iv), []).append(cands)
    if net.max_flow(src, sink) >= INF:
        return None
    steps = [cands for edge in net.cut_edges(sink) for cands in arcs.get(edge, [])]
    # every step needs one candidate; prefer transitions that block many
    freq = Counter(t for cands in steps for t in set(cands))
    chosen: set[Transition] = set()
    for cands in steps:
        if not cands:
            return None
        if chosen.isdisjoint(cands):
            chosen.add(min(cands, key=lambda t: (-freq[t], t)))
    return chosen


def _witness_transitions(w) -> list[Transition]:
    used = []
    for seg in w.segments:
        for u, ev, v in seg.steps:
            used += [(u[i], e, v[i]) for i, e in enumerate(ev) if e is not None]
    return used + list(w.stem) + list(w.loop)


def synthesize(a: Fsa, target: Target, max_iterations: int | None = None) -> SynthesisPlan:
    """Disable controllable transitions until ``target`` holds."""
    ctl = a.controllable_transitions
    everything = target.verify(a.without(ctl))
    if not everything.holds:
        return SynthesisPlan(target, False, (), a, target.verify(a), "infeasible")
    disabled: set[Transition] = set()
    limit = len(ctl) + 1 if max_iterations is None else max_iterations
    method = "min-cut"
    it = 0
    while True:
        residual = a.without(disabled)
        verdict = target.verify(residual)
        if verdict.holds or it >= limit:
            break
        it += 1
        k1, k2 = target.windows(residual)
        new = cut_transitions(residual, k1, k2, target.omega)
        if not new:
            # the witness must use a controllable transition, since
            # disabling all of them is enough
            method = "min-cut+witness"
            options = [t for t in _witness_transitions(verdict.witness) if t in ctl]
            new = {min(options)}
        disabled |= new
    # drop transitions that turn out to be unnecessary
    for t in sorted(disabled, reverse=True):
        trial = disabled - {t}
        if target.verify(a.without(trial)).holds:
            disabled = trial
    residual = a.without(disabled)
    verdict = target.verify(residual)
    return SynthesisPlan(target, verdict.holds, tuple(sorted(disabled)), residual, verdict, method, it)


def exhaustive_minimum_plan(a: Fsa, target: Target, cap: int = 12) -> SynthesisPlan:
    """Smallest set of controllable transitions to disable, by enumeration.

    Ties go to the lexicographically smallest set. Refuses models with more
    than ``cap`` controllable transitions.
    """
    ctl = sorted(a.controllable_transitions)
    if len(ctl) > cap:
        raise ValueError(f"{len(ctl)} controllable transitions exceed the cap of {cap}")
    tried = 0
    for size in range(len(ctl) + 1):
        for subset in itertools.combinations(ctl, size):
            tried += 1
            residual = a.without(subset)
            verdict = target.verify(residual)
            if verdict.holds:
                return SynthesisPlan(target, True, subset, residual, verdict, "exhaustive", tried)
    return SynthesisPlan(target, False, (), a, target.verify(a), "infeasible", tried)
