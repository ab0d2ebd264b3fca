"""(k1, k2)-detectability and its variant restricted to specified pairs.

After at least ``k1`` observations, the next ``k2`` observations must be
enough to pin down the current state (or, for the restricted variant, to
rule out every specified pair of states).
"""

from __future__ import annotations

from typing import Iterable

from .composition import concurrent_composition
from .fsa import Fsa, live_states
from .product import ANY, SOME_OBS, ProductView, synchronized_product
from .runs import _Chain, finish
from .verdict import Verdict, name_layer

SpecPairs = frozenset[tuple[int, int]]


def spec_from_names(a: Fsa, pairs: Iterable[tuple[str, str]]) -> SpecPairs:
    return frozenset((a.state_index(x), a.state_index(y)) for x, y in pairs)


def k1k2_layers(view: ProductView, k1: int, k2: int, top: set[int], bad: set[int]):
    """Layer ``k1`` holds the bad states that can still observe ``k2`` more
    symbols and end in ``top``; lower layers step back one or more
    observations at a time. The property holds iff the returned start set
    is empty."""
    if k1 < 0 or k2 < 0:
        raise ValueError("k1 and k2 must be non-negative")
    layers: dict[int, set[int]] = {}
    if k2 == 0:
        layers[k1] = top & bad
    else:
        layers[k1 + k2] = top
        for i in range(k1 + k2 - 1, k1, -1):
            layers[i] = view.pre_hat_eps(layers[i + 1])
        layers[k1] = bad & view.pre_one(layers[k1 + 1])
    for i in range(k1 - 1, -1, -1):
        layers[i] = view.pre_some(layers[i + 1])
    # with k1 = 0 any reachable bad state counts, however long the prefix
    start = set(layers[0]) if k1 == 0 else layers[0] & view.initial
    return layers, start


def _bad_states(view: ProductView, spec: SpecPairs | None) -> set[int]:
    if spec is None:
        return {p for p, st in enumerate(view.states) if st[0] != st[1]}
    return {
        p for p, st in enumerate(view.states)
        if (st[0], st[1]) in spec or (st[1], st[0]) in spec
    }


def _chain(view, layers, start, k1, k2) -> tuple[_Chain, int]:
    chain = _Chain(view)
    if k1 == 0:
        chain.extend("any", view.initial, ANY, layers[0].__contains__)
    else:
        chain.extend("some-obs", start, SOME_OBS, layers[1].__contains__)
        for i in range(2, k1 + 1):
            chain.follow("some-obs", SOME_OBS, layers[i].__contains__)
    filt = len(chain.segments) - 1
    chain.suffix(layers, k1, k1 + k2)
    return chain, filt


def _verify(a: Fsa, k1: int, k2: int, omega: bool, spec: SpecPairs | None) -> Verdict:
    view = ProductView.of_composition(concurrent_composition(a))
    live = live_states(a) if omega else None
    top = view.live(live) if omega else set(range(view.n))
    bad = _bad_states(view, spec)
    layers, start = k1k2_layers(view, k1, k2, top, bad)
    prop = ("omega" if omega else "star") + "-k1k2" + ("-d" if spec is not None else "")
    params: dict = {"k1": k1, "k2": k2}
    if spec is not None:
        params["spec"] = sorted([a.states[x], a.states[y]] for x, y in spec)
    named = {f"X'_{i}": name_layer(view, layers[i]) for i in sorted(layers, reverse=True)}
    named["start"] = name_layer(view, start)
    if start:
        chain, filt = _chain(view, layers, start, k1, k2)
        w = finish(a, chain, filt, live, spec=spec)
        return Verdict(prop, params, False, w, named)
    if omega and spec is not None:
        # the infinite continuation may come from a third state
        w = _triple_check(a, k1, k2, live, spec)
        if w is not None:
            return Verdict(prop, params, False, w, named, note="third-state continuation")
    return Verdict(prop, params, True, None, named)


def _triple_check(a: Fsa, k1: int, k2: int, live, spec: SpecPairs):
    view = synchronized_product(a, 3)
    top = view.live(live)
    bad = _bad_states(view, spec)
    layers, start = k1k2_layers(view, k1, k2, top, bad)
    if not start:
        return None
    chain, filt = _chain(view, layers, start, k1, k2)
    return finish(a, chain, filt, live, spec=spec, prefer=(2, 0, 1))


def verify_omega_k1k2(a: Fsa, k1: int, k2: int) -> Verdict:
    return _verify(a, k1, k2, True, None)


def verify_star_k1k2(a: Fsa, k1: int, k2: int) -> Verdict:
    return _verify(a, k1, k2, False, None)


def verify_omega_k1k2_d(a: Fsa, k1: int, k2: int, spec: Iterable[tuple[int, int]]) -> Verdict:
    return _verify(a, k1, k2, True, frozenset(spec))


def verify_star_k1k2_d(a: Fsa, k1: int, k2: int, spec: Iterable[tuple[int, int]]) -> Verdict:
    return _verify(a, k1, k2, False, frozenset(spec))


def k1_bound_for_delayed(a: Fsa) -> int:
    """``k1`` at which (k1, K) detectability coincides with K-delayed."""
    return a.n * a.n
