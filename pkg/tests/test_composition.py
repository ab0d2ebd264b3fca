from hypothesis import given

from detkit.composition import (
    HAT,
    Kind,
    Variant,
    accessible,
    concurrent_composition,
    observation_automaton,
)
from detkit.fsa import state_estimate
from detkit.io import parse_model, serialize_model

from conftest import fsas


def pair_edges(a, cc):
    out = set()
    for p, ev, q in cc.transitions:
        out.add((cc.pair_name(p), cc.event_name(ev), cc.pair_name(q)))
    return out


def test_fig2_accessible_composition(fig2):
    cc = concurrent_composition(fig2)
    assert {cc.pair_name(i) for i in range(cc.n)} == {
        "(s0,s0)", "(s1,s2)", "(s2,s1)", "(s1,s1)", "(s2,s2)"
    }
    assert {cc.pair_name(i) for i in cc.initial} == {"(s0,s0)"}
    assert pair_edges(fig2, cc) == {
        ("(s0,s0)", "(t1,t1)", "(s0,s0)"),
        ("(s0,s0)", "(t2,eps)", "(s0,s0)"),
        ("(s0,s0)", "(eps,t2)", "(s0,s0)"),
        ("(s0,s0)", "(t3,t4)", "(s1,s2)"),
        ("(s0,s0)", "(t3,t3)", "(s1,s1)"),
        ("(s0,s0)", "(t4,t3)", "(s2,s1)"),
        ("(s0,s0)", "(t4,t4)", "(s2,s2)"),
        ("(s1,s1)", "(t5,t5)", "(s1,s1)"),
    }


def test_fig2_observation_automaton(fig2):
    obs = observation_automaton(fig2)
    edges = {(obs.states[x], obs.labels[e], obs.states[y]) for x, e, y in obs.transitions}
    assert edges == {("s0", HAT, "s0"), ("s0", HAT, "s1"), ("s0", HAT, "s2"), ("s1", HAT, "s1")}
    assert obs.initial == fig2.initial


def test_observation_keeps_purely_silent_edges():
    a = parse_model("states: p q\ninitial: p\nevents: u:eps a:a\ntrans: p u q\ntrans: q a q\n")
    obs = observation_automaton(a)
    got = {(obs.states[x], obs.labels[e], obs.states[y]) for x, e, y in obs.transitions}
    assert got == {("p", None, "q"), ("q", HAT, "q")}


def test_composition_exports_as_model(fig2):
    text = serialize_model(concurrent_composition(fig2).to_fsa())
    assert parse_model(text).n == 5


@given(fsas(max_states=4))
def test_pair_events_respect_labels(a):
    cc = concurrent_composition(a, full=True)
    trans = set(a.transitions)
    for p, ev, q in cc.transitions:
        (x, y), (x2, y2) = cc.states[p], cc.states[q]
        if ev.kind is Kind.SYNC:
            assert a.labels[ev.left] == a.labels[ev.right] is not None
            assert (x, ev.left, x2) in trans and (y, ev.right, y2) in trans
        elif ev.kind is Kind.LEFT_EPS:
            assert a.labels[ev.left] is None and y == y2 and (x, ev.left, x2) in trans
        else:
            assert a.labels[ev.right] is None and x == x2 and (y, ev.right, y2) in trans


@given(fsas(max_states=4))
def test_lazy_build_equals_accessible_part_of_full(a):
    lazy = concurrent_composition(a)
    full = accessible(concurrent_composition(a, full=True))
    assert set(lazy.states) == set(full.states)
    norm = lambda cc: {(cc.states[p], ev, cc.states[q]) for p, ev, q in cc.transitions}  # noqa: E731
    assert norm(lazy) == norm(full)


@given(fsas(max_states=4))
def test_composition_is_symmetric(a):
    cc = concurrent_composition(a)
    states = set(cc.states)
    assert states == {(y, x) for x, y in states}


@given(fsas(max_states=4))
def test_reachable_pairs_are_estimate_pairs(a):
    # a pair is reachable iff both states sit in one estimate
    cc = concurrent_composition(a)
    words = [()]
    for _ in range(3):
        words += [w + (s,) for w in words for s in a.alphabet]
    from_estimates = set()
    for w in set(words):
        est = state_estimate(a, w).states
        from_estimates |= {(x, y) for x in est for y in est}
    assert from_estimates <= set(cc.states)


@given(fsas(max_states=4))
def test_normal_right_variant_only_moves_right_on_normal_events(a):
    cc = concurrent_composition(a, Variant.NORMAL_RIGHT)
    for _, ev, _ in cc.transitions:
        assert ev.right is None or ev.right not in a.faulty
