"""Delayed strong detectability.

The question: after observing long enough, does a window of ``K`` further
symbols always pin down the state that the prefix led to? The infinite
flavor only looks at behaviors that can be extended forever; the finite
flavor looks at every generated word.
"""

from __future__ import annotations

from .composition import concurrent_composition
from .fsa import Fsa, live_states
from .product import ANY, SOME_OBS, ProductView
from .runs import _Chain, finish
from .verdict import Verdict, name_layer


def effective_delay(a: Fsa, k: int) -> int:
    """Delays beyond ``|X|^2`` never change the verdict."""
    if k < 0:
        raise ValueError("delay must be non-negative")
    return min(k, a.n * a.n)


def delayed_layers(a: Fsa, k: int, omega: bool, clamp: bool = True):
    """Layered pair sets, keyed by layer number.

    Layer 2 holds pairs on an observable cycle from which a bad pair in
    layer 3 is reachable; the property holds iff layer 2 is empty.
    ``clamp=False`` builds all ``k`` layers even past the useful bound.
    """
    ke = effective_delay(a, k) if clamp else k
    if ke < 0:
        raise ValueError("delay must be non-negative")
    view = ProductView.of_composition(concurrent_composition(a))
    live = live_states(a)
    top = view.live(live) if omega else set(range(view.n))
    distinct = {p for p, (x, y) in enumerate(view.states) if x != y}
    layers: dict[int, set[int]] = {}
    if ke == 0:
        layers[3] = top & distinct
    else:
        layers[3 + ke] = top
        for i in range(2 + ke, 3, -1):
            layers[i] = view.pre_hat_eps(layers[i + 1])
        layers[3] = distinct & view.pre_one(layers[4])
    layers[2] = view.pump_states & view.back_any(layers[3])
    return view, live, ke, layers


def _verify(a: Fsa, k: int, omega: bool, clamp: bool = True) -> Verdict:
    view, live, ke, layers = delayed_layers(a, k, omega, clamp)
    named = {}
    if omega:
        named[f"X_{4 + ke}"] = frozenset((a.states[x],) for x in live)
    for i in sorted(layers, reverse=True):
        named[f"X'_{i}"] = name_layer(view, layers[i])
    prop = "omega-k-delayed" if omega else "star-k-delayed"
    params = {"K": k}
    if ke != k:
        params["K_effective"] = ke
    holds = not layers[2]
    witness = None
    if not holds:
        chain = _Chain(view)
        chain.extend("any", view.initial, ANY, layers[2].__contains__)
        p2 = chain.cur
        chain.follow("pump", SOME_OBS, lambda p: p == p2)
        chain.follow("any", ANY, layers[3].__contains__)
        filt = len(chain.segments) - 1
        chain.suffix(layers, 3, 3 + ke)
        witness = finish(a, chain, filt, live if omega else None)
    return Verdict(prop, params, holds, witness, named)


def verify_omega_k_delayed(a: Fsa, k: int, clamp: bool = True) -> Verdict:
    return _verify(a, k, True, clamp)


def verify_star_k_delayed(a: Fsa, k: int, clamp: bool = True) -> Verdict:
    return _verify(a, k, False, clamp)
