"""Reference checkers that work straight from the definitions.

They explore observed words through the subset construction instead of
the pair composition, so they share no code path with the structural
verifiers. Every search is cut off at a word length; past a pumping bound
that depends on the number of reachable state estimates the answer is
exact, below it the result is flagged as bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .fsa import Fsa, eps_closure, post


@dataclass(frozen=True)
class OracleResult:
    holds: bool
    exact: bool
    depth: int
    required_depth: int
    prefix: tuple[str, ...] | None = None
    suffix: tuple[str, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


class _Observer:
    def __init__(self, a: Fsa):
        self.a = a
        self.closure = [eps_closure(a, [x]) for x in range(a.n)]
        self._post1: dict[tuple[int, str], frozenset[int]] = {}
        self.live = self._live()

    def post1(self, x: int, sym: str) -> frozenset[int]:
        key = (x, sym)
        if key not in self._post1:
            self._post1[key] = post(self.a, [x], sym)
        return self._post1[key]

    def step(self, q: frozenset[int], sym: str) -> frozenset[int]:
        return frozenset().union(*(self.post1(x, sym) for x in q)) if q else q

    def _live(self) -> frozenset[int]:
        # a run with more than |X| observations must repeat a state
        # between two of them, so it can be pumped forever
        a = self.a
        alive = set(range(a.n))
        for _ in range(a.n + 1):
            alive = {
                x for x in range(a.n)
                if any(self.post1(x, s) & alive for s in a.alphabet)
            }
        return frozenset(alive)

    def start(self) -> frozenset[int]:
        return eps_closure(self.a, self.a.initial)

    @lru_cache(maxsize=None)
    def n_estimates(self) -> int:
        seen = set()
        todo = [self.start()] if self.a.initial else []
        while todo:
            q = todo.pop()
            if q in seen:
                continue
            seen.add(q)
            for s in self.a.alphabet:
                r = self.step(q, s)
                if r:
                    todo.append(r)
        return len(seen)

    def layers(self, max_len: int):
        """Yield ``(length, {estimate: word})`` for each word length."""
        frontier = {self.start(): ()} if self.a.initial else {}
        for length in range(max_len + 1):
            yield length, frontier
            nxt: dict[frozenset[int], tuple[str, ...]] = {}
            for q, w in frontier.items():
                for s in self.a.alphabet:
                    r = self.step(q, s)
                    if r and r not in nxt:
                        nxt[r] = w + (s,)
            frontier = nxt

    def violation(self, q, k2: int, omega: bool, spec) -> tuple[str, ...] | None:
        """A word of length ``k2`` after which ``q`` is still ambiguous."""
        rel = frozenset((x, y) for x in q for y in self.closure[x])
        frontier = {rel: ()}
        for _ in range(k2):
            nxt: dict = {}
            for r, w in frontier.items():
                for s in self.a.alphabet:
                    r2 = frozenset((x, z) for x, y in r for z in self.post1(y, s))
                    if r2 and r2 not in nxt:
                        nxt[r2] = w + (s,)
            frontier = nxt
        for r, w in sorted(frontier.items(), key=lambda kv: kv[1]):
            origin = {x for x, _ in r}
            if spec is None:
                ambiguous = len(origin) >= 2
            else:
                ambiguous = any((u, v) in spec for u in origin for v in origin)
            if ambiguous and (not omega or any(y in self.live for _, y in r)):
                return w
        return None


@lru_cache(maxsize=64)
def _observer(a: Fsa) -> _Observer:
    return _Observer(a)


def _flavor(flavor: str) -> bool:
    if flavor not in ("omega", "star"):
        raise ValueError("flavor must be 'omega' or 'star'")
    return flavor == "omega"


def required_depth_delayed(a: Fsa, k: int) -> int:
    n = _observer(a).n_estimates()
    return max(2 * n - 1, 0) + k


def required_depth_k1k2(a: Fsa, k1: int, k2: int) -> int:
    n = _observer(a).n_estimates()
    return k1 + max(n - 1, 0) + k2


def oracle_delayed(a: Fsa, k: int, flavor: str, depth: int | None = None) -> OracleResult:
    """Delayed detectability by word enumeration.

    A bad estimate reachable by a word of length at least N (the number of
    reachable estimates) is reachable by arbitrarily long words, and any
    such estimate also shows up at some length below 2N.
    """
    omega = _flavor(flavor)
    obs = _observer(a)
    n = obs.n_estimates()
    need = required_depth_delayed(a, k)
    depth = need if depth is None else depth
    checked = set()
    for length, frontier in obs.layers(depth - k):
        if length < n:
            continue
        for q, w in frontier.items():
            if q in checked:
                continue
            checked.add(q)
            w2 = obs.violation(q, k, omega, None)
            if w2 is not None:
                return OracleResult(False, True, depth, need, w, w2)
    return OracleResult(True, depth >= need, depth, need)


def oracle_k1k2(
    a: Fsa,
    k1: int,
    k2: int,
    flavor: str,
    spec=None,
    depth: int | None = None,
) -> OracleResult:
    """(k1, k2) detectability, optionally restricted to ``spec`` pairs."""
    omega = _flavor(flavor)
    obs = _observer(a)
    need = required_depth_k1k2(a, k1, k2)
    depth = need if depth is None else depth
    spec = None if spec is None else frozenset(spec)
    checked = set()
    for length, frontier in obs.layers(depth - k2):
        if length < k1:
            continue
        for q, w in frontier.items():
            if q in checked:
                continue
            checked.add(q)
            w2 = obs.violation(q, k2, omega, spec)
            if w2 is not None:
                return OracleResult(False, True, depth, need, w, w2)
    return OracleResult(True, depth >= need, depth, need)


# -- diagnosability ------------------------------------------------------


class _FaultExplorer:
    """Configurations (state of the actual run, estimate of normal runs)."""

    def __init__(self, a: Fsa):
        self.a = a
        normal_eps = [[] for _ in range(a.n)]
        for x, e, y in a.transitions:
            if a.labels[e] is None and e not in a.faulty:
                normal_eps[x].append(y)
        self.normal_eps = normal_eps

    def nclose(self, states) -> frozenset[int]:
        seen = set(states)
        todo = list(seen)
        while todo:
            x = todo.pop()
            for y in self.normal_eps[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return frozenset(seen)

    def npost(self, est, sym) -> frozenset[int]:
        a = self.a
        nxt = {y for x in est for e, y in a.obs_out[x].get(sym, ()) if e not in a.faulty}
        return self.nclose(nxt)

    def moves(self, cfg):
        """Yield ``(faulty, next config)``."""
        u, est = cfg
        for e, v in self.a.out[u]:
            lab = self.a.labels[e]
            est2 = est if lab is None else self.npost(est, lab)
            yield e in self.a.faulty, (v, est2)

    def starts(self):
        est = self.nclose(self.a.initial)
        return [(x, est) for x in sorted(self.a.initial)]

    def reachable(self, starts):
        seen = set(starts)
        todo = list(seen)
        while todo:
            c = todo.pop()
            for _, d in self.moves(c):
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        return seen


def oracle_diagnosability(a: Fsa) -> OracleResult:
    """Faulty run followed by ``n`` more events that a normal run mimics.

    ``n`` is the number of distinct configurations reachable after a fault:
    reaching that many steps forces a repeat, hence unbounded extensions.
    """
    ex = _FaultExplorer(a)
    after = {d for c in ex.reachable(ex.starts()) for f, d in ex.moves(c) if f}
    after = {d for d in ex.reachable(after) if d[1]}
    cap = len(after)
    # explore (config, steps since first fault capped at cap)
    start = [(c, -1) for c in ex.starts()]
    seen = set(start)
    todo = list(start)
    while todo:
        cfg, count = todo.pop()
        if count == cap and cfg[1]:
            return OracleResult(False, True, cap, cap)
        for f, d in ex.moves(cfg):
            if not d[1]:
                continue
            nc = min(count + 1, cap) if count >= 0 else (0 if f else -1)
            node = (d, nc)
            if node not in seen:
                seen.add(node)
                todo.append(node)
    return OracleResult(True, True, cap, cap)


def oracle_diagnosability_by_extension(a: Fsa) -> OracleResult:
    """Same question phrased per faulty prefix.

    For every configuration right after a faulty event, ask whether some
    continuation of ``n`` events keeps a matching normal run alive.
    """
    ex = _FaultExplorer(a)
    fault_hits = {d for c in ex.reachable(ex.starts()) for f, d in ex.moves(c) if f}
    universe = {d for d in ex.reachable(fault_hits) if d[1]}
    cap = len(universe)
    # extendable[j] = configs with a continuation of j events staying alive
    extendable = set(universe)
    for _ in range(cap):
        extendable = {c for c in universe if any(d in extendable for _, d in ex.moves(c))}
    holds = not (fault_hits & extendable)
    return OracleResult(holds, True, cap, cap)
