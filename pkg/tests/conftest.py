import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

import detkit
from detkit.campaign import random_fsa
from detkit.fsa import Fsa

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def fsas(draw, max_states=4, max_events=5, symbols="ab"):
    """Small automata with shrinkable structure."""
    n = draw(st.integers(1, max_states))
    m = draw(st.integers(1, max_events))
    labels = draw(st.lists(st.sampled_from([None, *symbols]), min_size=m, max_size=m))
    states = [f"q{i}" for i in range(n)]
    events = {f"t{i}": lab for i, lab in enumerate(labels)}
    trans = draw(
        st.lists(
            st.tuples(st.sampled_from(states), st.sampled_from(list(events)), st.sampled_from(states)),
            max_size=3 * n + 2,
            unique=True,
        )
    )
    initial = draw(st.lists(st.sampled_from(states), min_size=1, max_size=2, unique=True))
    ctl = draw(st.lists(st.sampled_from(list(events)), unique=True))
    faulty = draw(st.lists(st.sampled_from(list(events)), unique=True))
    return Fsa.build(states, initial, events, trans, ctl, faulty)


def seeded_fsas(max_states=5):
    return st.integers(0, 2**32).map(lambda s: random_fsa(random.Random(s), max_states=max_states))


@pytest.fixture(scope="session")
def fig1():
    return detkit.example("fig1")


@pytest.fixture(scope="session")
def fig2():
    return detkit.example("fig2")


@pytest.fixture(scope="session")
def fig4():
    return detkit.example("fig4")


@pytest.fixture(scope="session")
def fig7():
    return detkit.example("fig7")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
