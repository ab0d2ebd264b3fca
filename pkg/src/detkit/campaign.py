"""Random cross-validation of structural verifiers against the oracles."""

from __future__ import annotations

import csv
import io
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from . import oracle
from .delayed import verify_omega_k_delayed, verify_star_k_delayed
from .diagnosability import verify_diagnosability
from .fsa import Fsa
from .k1k2 import verify_omega_k1k2, verify_omega_k1k2_d, verify_star_k1k2, verify_star_k1k2_d

WINDOW = (0, 1, 2)


def random_fsa(
    rng: random.Random,
    max_states: int = 5,
    max_events: int = 6,
    max_unobservable: int = 2,
    symbols: str = "abc",
) -> Fsa:
    """A small random automaton; events may label several transitions."""
    n = rng.randint(1, max_states)
    m = rng.randint(1, max_events)
    n_eps = rng.randint(0, min(max_unobservable, m))
    used = symbols[: rng.randint(1, len(symbols))]
    labels = [None] * n_eps + [rng.choice(used) for _ in range(m - n_eps)]
    rng.shuffle(labels)
    states = [f"x{i}" for i in range(n)]
    events = {f"e{i}": lab for i, lab in enumerate(labels)}
    trans = set()
    for e in events:
        for _ in range(rng.choice((1, 1, 2, 2, 3))):
            trans.add((rng.choice(states), e, rng.choice(states)))
    initial = rng.sample(states, rng.choice((1, 1, 1, 2)) if n > 1 else 1)
    names = list(events)
    return Fsa.build(
        states,
        initial,
        events,
        sorted(trans),
        controllable=[e for e in names if rng.random() < 0.5],
        faulty=[e for e in names if rng.random() < 0.3],
    )


def random_spec(rng: random.Random, a: Fsa) -> frozenset[tuple[int, int]]:
    pairs = [(x, y) for x in range(a.n) for y in range(a.n) if x != y]
    if not pairs:
        return frozenset()
    return frozenset(rng.sample(pairs, rng.randint(1, min(3, len(pairs)))))


@dataclass(frozen=True)
class Row:
    instance: int
    property: str
    params: str
    structural: bool
    oracle: bool
    exact: bool

    @property
    def agree(self) -> bool:
        return self.structural == self.oracle


def check_instance(a: Fsa, rng: random.Random, index: int = 0) -> list[Row]:
    rows = []

    def add(prop, params, s, o):
        rows.append(Row(index, prop, params, bool(s.holds), bool(o.holds), o.exact))

    for k in WINDOW:
        add("omega-k-delayed", f"K={k}", verify_omega_k_delayed(a, k), oracle.oracle_delayed(a, k, "omega"))
        add("star-k-delayed", f"K={k}", verify_star_k_delayed(a, k), oracle.oracle_delayed(a, k, "star"))
    specs = [random_spec(rng, a) for _ in range(3)]
    for k1 in WINDOW:
        for k2 in WINDOW:
            p = f"k1={k1} k2={k2}"
            add("omega-k1k2", p, verify_omega_k1k2(a, k1, k2), oracle.oracle_k1k2(a, k1, k2, "omega"))
            add("star-k1k2", p, verify_star_k1k2(a, k1, k2), oracle.oracle_k1k2(a, k1, k2, "star"))
            for j, spec in enumerate(specs):
                q = f"{p} spec={j}"
                add("omega-k1k2-d", q, verify_omega_k1k2_d(a, k1, k2, spec),
                    oracle.oracle_k1k2(a, k1, k2, "omega", spec))
                add("star-k1k2-d", q, verify_star_k1k2_d(a, k1, k2, spec),
                    oracle.oracle_k1k2(a, k1, k2, "star", spec))
    d = verify_diagnosability(a)
    add("diagnosable", "", d, oracle.oracle_diagnosability(a))
    add("diagnosable", "per-prefix", d, oracle.oracle_diagnosability_by_extension(a))
    return rows


def _one(seed: int, i: int, max_states: int) -> tuple[list[Row], float]:
    rng = random.Random(f"{seed}:{i}")
    a = random_fsa(rng, max_states=max_states)
    t0 = time.perf_counter()
    rows = check_instance(a, rng, i)
    return rows, time.perf_counter() - t0


def instance(seed: int, i: int, max_states: int = 5) -> Fsa:
    """The ``i``-th automaton of a campaign, for reproducing a row."""
    return random_fsa(random.Random(f"{seed}:{i}"), max_states=max_states)


@dataclass
class CampaignResult:
    rows: list[Row]
    seconds: list[float]

    @property
    def disagreements(self) -> list[Row]:
        return [r for r in self.rows if not r.agree]

    def summary(self) -> dict[str, tuple[int, int]]:
        """property -> (checks, disagreements)."""
        out: dict[str, tuple[int, int]] = {}
        for r in self.rows:
            n, bad = out.get(r.property, (0, 0))
            out[r.property] = (n + 1, bad + (not r.agree))
        return dict(sorted(out.items()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["instance", "property", "params", "structural", "oracle", "exact", "agree"])
        for r in self.rows:
            w.writerow([r.instance, r.property, r.params, int(r.structural), int(r.oracle),
                        int(r.exact), "pass" if r.agree else "FAIL"])
        return buf.getvalue()


def run_campaign(instances: int, max_states: int = 5, seed: int = 0, workers: int = 1) -> CampaignResult:
    """Results are merged in instance order whatever the worker count."""
    jobs = range(instances)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda i: _one(seed, i, max_states), jobs))
    else:
        parts = [_one(seed, i, max_states) for i in jobs]
    rows = [r for part, _ in parts for r in part]
    return CampaignResult(rows, [t for _, t in parts])


def plot_campaign(result: CampaignResult, path: str | Path) -> None:
    """Bar chart of checks per property, plus the per-instance time histogram."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    summary = result.summary()
    names = list(summary)
    ok = [summary[k][0] - summary[k][1] for k in names]
    bad = [summary[k][1] for k in names]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
    ax1.barh(names, ok, color="tab:green", label="agree")
    ax1.barh(names, bad, left=ok, color="tab:red", label="disagree")
    ax1.set_xlabel("checks")
    ax1.legend(loc="lower right")
    ax2.hist([1000 * s for s in result.seconds], bins=30, color="tab:blue")
    ax2.set_xlabel("ms per instance")
    ax2.set_ylabel("instances")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(result: CampaignResult, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "campaign.csv"
    csv_path.write_text(result.to_csv())
    png_path = out / "campaign.png"
    plot_campaign(result, png_path)
    return [csv_path, png_path]


def format_table(summary: dict[str, tuple[int, int]]) -> Iterable[str]:
    yield f"{'property':<18} {'checks':>7} {'disagree':>9}  result"
    for prop, (n, bad) in summary.items():
        yield f"{prop:<18} {n:>7} {bad:>9}  {'pass' if bad == 0 else 'FAIL'}"
