"""Fault diagnosability.

A fault is diagnosable when every run that contains a faulty event, once
extended long enough, produces an observation that no fault-free run can
produce. Checked on the composition whose right copy only uses normal
events: a violation is a faulty left move followed by a cycle along which
the left copy keeps moving.
"""

from __future__ import annotations

from . import graph
from .composition import Kind, Variant, concurrent_composition
from .fsa import Fsa
from .product import ANY, LEFT_MOVES, ProductView, fault_pattern
from .runs import _Chain
from .verdict import Verdict, name_layer
from .witness import Witness


def diagnosability_sets(a: Fsa):
    cc = concurrent_composition(a, Variant.NORMAL_RIGHT)
    view = ProductView.of_composition(cc)
    entered = {q for p, ev, q in cc.transitions if ev.left is not None and ev.left in a.faulty}
    comps = graph.tarjan_scc(view.any_succ)
    comp_of = graph.component_map(comps, view.n)
    hot = {
        comp_of[p]
        for p, ev, q in cc.transitions
        if ev.kind is not Kind.RIGHT_EPS and comp_of[p] == comp_of[q]
    }
    cycling = {p for p in range(view.n) if comp_of[p] in hot}
    after_fault = graph.reach(entered, view.any_succ)
    return view, entered, cycling, after_fault & cycling


def verify_diagnosability(a: Fsa) -> Verdict:
    view, entered, cycling, bad = diagnosability_sets(a)
    named = {
        "fault_entered": name_layer(view, entered),
        "left_cycling": name_layer(view, cycling),
        "violating": name_layer(view, bad),
    }
    if not bad:
        return Verdict("diagnosable", {}, True, None, named)
    to_bad = view.back_any(bad)
    chain = _Chain(view)
    chain.extend("fault", view.initial, fault_pattern(a.faulty), to_bad.__contains__)
    chain.follow("any", ANY, bad.__contains__)
    c = chain.cur
    chain.follow("left-cycle", LEFT_MOVES, lambda p: p == c)
    w = Witness(segments=tuple(chain.segments), normal_right=True)
    return Verdict("diagnosable", {}, False, w, named)
