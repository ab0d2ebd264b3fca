"""Acceptance suite: one pass/fail line per criterion.

The lines are collected and printed in the terminal summary (and also to
stdout, visible with ``-s``).
"""

import json
import random
import time
from importlib import resources

import pytest

from detkit.campaign import random_fsa, run_campaign
from detkit.cli import main
from detkit.composition import concurrent_composition, observation_automaton, HAT
from detkit.delayed import verify_omega_k_delayed, verify_star_k_delayed
from detkit.fsa import Fsa
from detkit.k1k2 import verify_omega_k1k2
from detkit.synthesis import Target, synthesize

from conftest import ACCEPTANCE_LINES

MODELS = resources.files("detkit").joinpath("models")


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def cli_layers(capsys, prop, k, name):
    main(["verify", "--property", prop, "--k", str(k), "--layers", str(MODELS.joinpath(f"{name}.fsa"))])
    body = json.loads(capsys.readouterr().out)
    return {
        key: {tuple(v) if isinstance(v, list) else v for v in vals}
        for key, vals in body["layers"].items()
    }


def test_criterion_01_fig1_delayed(fig1):
    def timed(k):
        best = float("inf")
        for _ in range(5):
            concurrent_composition.cache_clear()
            t0 = time.perf_counter()
            v = verify_omega_k_delayed(fig1, k)
            best = min(best, time.perf_counter() - t0)
        return v.holds, best

    h0, t0 = timed(0)
    h1, t1 = timed(1)
    ok = (not h0) and h1 and max(t0, t1) < 0.010
    record(1, ok, f"fig1 omega-delayed K=0 holds={h0}, K=1 holds={h1}; "
                  f"{1000 * t0:.2f} ms / {1000 * t1:.2f} ms (< 10 ms)")


def test_criterion_02_infinite_layers(capsys):
    k0 = cli_layers(capsys, "omega-k-delayed", 0, "fig2")
    k1 = cli_layers(capsys, "omega-k-delayed", 1, "fig2")
    ok = (
        k0["X_4"] == {"s0", "s1"}
        and k0["X'_3"] == {("s1", "s2"), ("s2", "s1")}
        and k0["X'_2"] == {("s0", "s0")}
        and k1["X_5"] == {"s0", "s1"}
        and k1["X'_4"] == {("s0", "s0"), ("s1", "s1"), ("s1", "s2"), ("s2", "s1")}
        and k1["X'_3"] == set()
        and k1["X'_2"] == set()
    )
    record(2, ok, "fig2 omega layer sets at K=0 and K=1 match exactly (via --layers JSON)")


def test_criterion_03_finite_layers(capsys):
    k0 = cli_layers(capsys, "star-k-delayed", 0, "fig2")
    k1 = cli_layers(capsys, "star-k-delayed", 1, "fig2")
    ok = (
        k0["X'_3"] == {("s1", "s2"), ("s2", "s1")}
        and k0["X'_2"] == {("s0", "s0")}
        and k1["X'_4"] == {("s0", "s0"), ("s1", "s1"), ("s1", "s2"), ("s2", "s1"), ("s2", "s2")}
        and k1["X'_3"] == set()
    )
    record(3, ok, "fig2 star layer sets at K=0 and K=1 match exactly (via --layers JSON)")


def test_criterion_04_fig4_separation(fig4):
    a = verify_omega_k1k2(fig4, 0, 0).holds
    b = verify_omega_k_delayed(fig4, 0).holds
    record(4, (not a) and b, f"fig4 omega-(0,0) holds={a}, omega-0-delayed holds={b}")


def test_criterion_05_fig2_compositions(fig2):
    cc = concurrent_composition(fig2)
    states = {cc.pair_name(i) for i in range(cc.n)}
    edges = {(cc.pair_name(p), cc.event_name(ev), cc.pair_name(q)) for p, ev, q in cc.transitions}
    want_states = {"(s0,s0)", "(s1,s2)", "(s2,s1)", "(s1,s1)", "(s2,s2)"}
    want_edges = {
        ("(s0,s0)", "(t1,t1)", "(s0,s0)"), ("(s0,s0)", "(t2,eps)", "(s0,s0)"),
        ("(s0,s0)", "(eps,t2)", "(s0,s0)"), ("(s0,s0)", "(t3,t4)", "(s1,s2)"),
        ("(s0,s0)", "(t3,t3)", "(s1,s1)"), ("(s0,s0)", "(t4,t3)", "(s2,s1)"),
        ("(s0,s0)", "(t4,t4)", "(s2,s2)"), ("(s1,s1)", "(t5,t5)", "(s1,s1)"),
    }
    obs = observation_automaton(fig2)
    obs_edges = {(obs.states[x], obs.labels[e], obs.states[y]) for x, e, y in obs.transitions}
    want_obs = {("s0", HAT, "s0"), ("s0", HAT, "s1"), ("s0", HAT, "s2"), ("s1", HAT, "s1")}
    ok = states == want_states and edges == want_edges and obs_edges == want_obs
    record(5, ok, f"fig2 reachable composition: {len(states)} states (as drawn), "
                  f"{len(edges)} pair transitions; observation automaton edges match")


def test_criterion_06_synthesis_goldens(fig7):
    def only(names):
        return Fsa.build(fig7.states, ["s0"], dict(zip(fig7.events, fig7.labels)),
                         [fig7.transition_name(t) for t in fig7.transitions],
                         controllable_transitions=names)

    targets = [Target("omega-k1k2", k1=2, k2=2), Target("star-k1k2", k1=2, k2=2),
               Target("star-k1k2", k1=1, k2=2)]
    checks = []
    for name in (("s1", "t4", "s1"), ("s0", "t3", "s1")):
        a = only([name])
        for t in targets:
            plan = synthesize(a, t)
            direct = t.verify(fig7.without([fig7.transition_index(name)])).holds
            checks.append(plan.feasible and plan.verdict.holds and direct
                          and [a.transition_name(x) for x in plan.disabled] == [name])
    loop = only([("s0", "t1", "s0")])
    t12 = Target("star-k1k2", k1=1, k2=2)
    c = (not synthesize(loop, t12).feasible
         and not t12.verify(fig7.without([fig7.transition_index(("s0", "t1", "s0"))])).holds)
    d = not any(verify_omega_k1k2(fig7, k1, k2).holds for k1 in range(3) for k2 in range(3))
    ok = all(checks) and c and d
    record(6, ok, f"fig7 (a) {all(checks[:3])} (b) {all(checks[3:])} (c) {c} (d) {d}")


def test_criterion_07_campaign():
    t0 = time.perf_counter()
    result = run_campaign(500, 5, seed=2024)
    secs = time.perf_counter() - t0
    bad = result.disagreements
    inexact = sum(not r.exact for r in result.rows)
    ok = not bad and inexact == 0 and secs < 300
    record(7, ok, f"500 random automata, {len(result.rows)} checks, {len(bad)} disagreements, "
                  f"{inexact} bounded-only, {secs:.1f} s (< 300 s)")


def test_criterion_08_clamp():
    mismatches = 0
    for i in range(100):
        a = random_fsa(random.Random(f"clamp:{i}"))
        n2 = a.n * a.n
        for fn in (verify_omega_k_delayed, verify_star_k_delayed):
            if fn(a, n2, clamp=False).holds != fn(a, n2 + 7, clamp=False).holds:
                mismatches += 1
    record(8, mismatches == 0, f"100 instances x 2 flavors, verdict(|X|^2) vs verdict(|X|^2+7) "
                               f"without clamping: {mismatches} mismatches")


def test_criterion_09_monotonicity():
    targets = [Target("omega-k1k2", k1=1, k2=1), Target("star-k1k2", k1=2, k2=1),
               Target("omega-k-delayed", k=1), Target("star-k-delayed", k=0)]
    violations = premises = 0
    for i in range(100):
        rng = random.Random(f"mono:{i}")
        a = random_fsa(rng)
        target = targets[i % len(targets)]
        ctl = sorted(a.controllable_transitions)
        plan = synthesize(a, target)
        small = set(plan.disabled) if plan.feasible else {t for t in ctl if rng.random() < 0.5}
        large = small | {t for t in ctl if rng.random() < 0.5}
        if target.verify(a.without(small)).holds:
            premises += 1
            if not target.verify(a.without(large)).holds:
                violations += 1
    record(9, violations == 0, f"100 nested samples ({premises} with enforcing smaller set), "
                               f"{violations} violations")


def test_criterion_10_size_bounds():
    failures = 0
    for i in range(100):
        a = random_fsa(random.Random(f"size:{i}"))
        n = a.n
        n_eps = sum(lab is None for lab in a.labels)
        per_label = {}
        for lab in a.labels:
            if lab is not None:
                per_label[lab] = per_label.get(lab, 0) + 1
        bound = n * n * (2 * n_eps * n + sum(c * c for c in per_label.values()) * n * n)
        for cc in (concurrent_composition(a), concurrent_composition(a, full=True)):
            if cc.n > n * n or len(cc.transitions) > bound:
                failures += 1
    record(10, failures == 0, f"100 instances, reachable and full compositions: {failures} bound violations")


@pytest.fixture(scope="module")
def big():
    rng = random.Random(7)
    n = 200
    events = {f"e{i}": (None if i < 2 else "abcd"[i % 4]) for i in range(10)}
    trans = {(f"x{x}", rng.choice(list(events)), f"x{rng.randrange(n)}") for x in range(n) for _ in range(2)}
    return Fsa.build([f"x{i}" for i in range(n)], ["x0", "x1"], events, sorted(trans))


def test_smoke_200_states(big):
    t0 = time.perf_counter()
    verify_omega_k_delayed(big, 1)
    verify_star_k_delayed(big, 1)
    verify_omega_k1k2(big, 2, 2)
    secs = time.perf_counter() - t0
    record(0, secs < 30, f"smoke: 200-state instance, three verifications in {secs:.2f} s (< 30 s)")
