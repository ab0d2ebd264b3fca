import pytest
from hypothesis import given
from hypothesis import strategies as st

from detkit import oracle
from detkit.delayed import effective_delay, verify_omega_k_delayed, verify_star_k_delayed
from detkit.fsa import Fsa, delayed_state_estimate
from detkit.k1k2 import k1_bound_for_delayed, verify_omega_k1k2, verify_star_k1k2
from detkit.witness import replay

from conftest import fsas, seeded_fsas

VERIFY = {"omega": verify_omega_k_delayed, "star": verify_star_k_delayed}


def layers(v):
    return {name: set(t if len(t) > 1 else t[0] for t in s) for name, s in v.layers.items()}


def test_fig1(fig1):
    assert not verify_omega_k_delayed(fig1, 0).holds
    assert verify_omega_k_delayed(fig1, 1).holds


def test_fig2_infinite_layers(fig2):
    got = layers(verify_omega_k_delayed(fig2, 0))
    assert got["X_4"] == {"s0", "s1"}
    assert got["X'_3"] == {("s1", "s2"), ("s2", "s1")}
    assert got["X'_2"] == {("s0", "s0")}
    got = layers(verify_omega_k_delayed(fig2, 1))
    assert got["X_5"] == {"s0", "s1"}
    assert got["X'_4"] == {("s0", "s0"), ("s1", "s1"), ("s1", "s2"), ("s2", "s1")}
    assert got["X'_3"] == set() and got["X'_2"] == set()


def test_fig2_finite_layers(fig2):
    got = layers(verify_star_k_delayed(fig2, 0))
    assert got["X'_3"] == {("s1", "s2"), ("s2", "s1")}
    assert got["X'_2"] == {("s0", "s0")}
    got = layers(verify_star_k_delayed(fig2, 1))
    assert got["X'_4"] == {("s0", "s0"), ("s1", "s1"), ("s1", "s2"), ("s2", "s1"), ("s2", "s2")}
    assert got["X'_3"] == set() and got["X'_2"] == set()


def test_fig4_is_delayed_detectable(fig4):
    assert verify_omega_k_delayed(fig4, 0).holds


def test_negative_delay_rejected(fig1):
    with pytest.raises(ValueError):
        verify_omega_k_delayed(fig1, -1)


def test_clamp_reported(fig1):
    v = verify_omega_k_delayed(fig1, 100)
    assert v.params == {"K": 100, "K_effective": 9}
    assert effective_delay(fig1, 3) == 3


def test_silent_start_of_the_window_is_seen():
    # after a^n c the state is x or x'; x needs a silent move before b
    a = Fsa.build(["x0", "x", "x1"], ["x0"], {"a": "a", "c": "c", "u": None, "b": "b"},
                  [("x0", "a", "x0"), ("x0", "c", "x"), ("x", "u", "x1"), ("x1", "b", "x1")])
    for k in range(4):
        assert not verify_omega_k_delayed(a, k).holds
        assert not oracle.oracle_delayed(a, k, "omega").holds
    assert len(delayed_state_estimate(a, "aac", "b").states) == 2


@given(seeded_fsas(5), st.integers(0, 2), st.sampled_from(["omega", "star"]))
def test_agrees_with_oracle(a, k, flavor):
    assert VERIFY[flavor](a, k).holds == oracle.oracle_delayed(a, k, flavor).holds


@given(fsas(max_states=4), st.integers(0, 2), st.sampled_from(["omega", "star"]))
def test_witness_replays_and_is_ambiguous(a, k, flavor):
    v = VERIFY[flavor](a, k)
    if v.holds:
        assert v.witness is None
        return
    assert replay(a, v.witness) == []
    pre, post = v.witness.words(a)
    assert len(post) == effective_delay(a, k)
    assert len(delayed_state_estimate(a, pre, post).states) >= 2


@given(fsas(max_states=4), st.sampled_from(["omega", "star"]))
def test_monotone_in_delay(a, flavor):
    verdicts = [VERIFY[flavor](a, k).holds for k in range(4)]
    assert verdicts == sorted(verdicts)


@given(fsas(max_states=3), st.sampled_from(["omega", "star"]))
def test_clamp_matches_unclamped(a, flavor):
    n2 = a.n * a.n
    assert VERIFY[flavor](a, n2).holds == VERIFY[flavor](a, n2 + 5, clamp=False).holds


@given(fsas(max_states=4), st.integers(0, 2))
def test_equivalent_to_k1k2_with_large_k1(a, k):
    k1 = k1_bound_for_delayed(a)
    assert verify_omega_k_delayed(a, k).holds == verify_omega_k1k2(a, k1, k).holds
    assert verify_star_k_delayed(a, k).holds == verify_star_k1k2(a, k1, k).holds


@given(fsas(max_states=4), st.integers(0, 2))
def test_infinite_flavor_is_weaker(a, k):
    # every finite violation that extends forever is an infinite one
    if verify_star_k_delayed(a, k).holds:
        assert verify_omega_k_delayed(a, k).holds
