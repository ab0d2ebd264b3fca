"""Detectability, diagnosability and enforcement for labeled finite automata."""

from importlib import resources

from .composition import (
    ConcurrentComposition,
    PairEvent,
    Variant,
    concurrent_composition,
    observation_automaton,
)
from .delayed import effective_delay, verify_omega_k_delayed, verify_star_k_delayed
from .diagnosability import verify_diagnosability
from .fsa import (
    Fsa,
    ModelError,
    accessible_part,
    check_assumption1,
    delayed_state_estimate,
    scc_decomposition,
    state_estimate,
    states_in_observable_cycles,
)
from .io import load_model, parse_model, serialize_model, to_dot
from .k1k2 import (
    k1_bound_for_delayed,
    verify_omega_k1k2,
    verify_omega_k1k2_d,
    verify_star_k1k2,
    verify_star_k1k2_d,
)
from .synthesis import SynthesisPlan, Target, exhaustive_minimum_plan, synthesize
from .verdict import Verdict

__version__ = "0.1.0"

EXAMPLES = ("fig1", "fig2", "fig4", "fig7")


def example(name: str) -> Fsa:
    """One of the bundled models, by stem name."""
    if name not in EXAMPLES:
        raise KeyError(f"no bundled model {name!r}; choose from {EXAMPLES}")
    text = resources.files(__package__).joinpath("models", f"{name}.fsa").read_text()
    return parse_model(text)


__all__ = [
    "ConcurrentComposition",
    "EXAMPLES",
    "Fsa",
    "ModelError",
    "PairEvent",
    "SynthesisPlan",
    "Target",
    "Variant",
    "Verdict",
    "accessible_part",
    "check_assumption1",
    "concurrent_composition",
    "delayed_state_estimate",
    "effective_delay",
    "example",
    "exhaustive_minimum_plan",
    "k1_bound_for_delayed",
    "load_model",
    "observation_automaton",
    "parse_model",
    "scc_decomposition",
    "serialize_model",
    "state_estimate",
    "states_in_observable_cycles",
    "synthesize",
    "to_dot",
    "verify_diagnosability",
    "verify_omega_k1k2",
    "verify_omega_k1k2_d",
    "verify_omega_k_delayed",
    "verify_star_k1k2",
    "verify_star_k1k2_d",
    "verify_star_k_delayed",
]
