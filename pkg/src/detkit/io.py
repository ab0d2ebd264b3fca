"""Reading and writing automata.

Text format, one declaration per line, ``#`` starts a comment::

    states: s0 s1 s2
    initial: s0
    events: t1:a t2:eps t3:b
    controllable: t3
    faulty:
    trans: s0 t1 s1
    trans: s1 t3 s2

``eps`` marks an unobservable event. Optional keys: ``alphabet`` (extra
symbols) and ``controllable_trans`` (a single controllable transition,
for events that are controllable only at some places). The JSON form
uses the same keys with lists for values.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path
from typing import Any, Iterable

from .fsa import Fsa, ModelError

EPS = "eps"
LIST_KEYS = ("states", "initial", "events", "controllable", "faulty", "alphabet")
TRIPLE_KEYS = ("trans", "controllable_trans")


def parse_model(text: str) -> Fsa:
    decl: dict[str, list[tuple[str, int]]] = {k: [] for k in LIST_KEYS}
    triples: dict[str, list[tuple[tuple[str, str, str], int]]] = {k: [] for k in TRIPLE_KEYS}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ModelError(f"expected 'key: values', got {line!r}", lineno)
        words = rest.split()
        if key in decl:
            decl[key] += [(w, lineno) for w in words]
        elif key in triples:
            if len(words) != 3:
                raise ModelError(f"{key} needs 'source event target'", lineno)
            triples[key].append((tuple(words), lineno))
        else:
            raise ModelError(f"unknown key {key!r}", lineno)
    events = []
    for word, lineno in decl["events"]:
        name, sep, label = word.partition(":")
        if not sep or not name or not label:
            raise ModelError(f"event must be 'name:label', got {word!r}", lineno)
        events.append((name, label, lineno))
    return _assemble(decl, events, triples)


def _assemble(decl, events, triples) -> Fsa:
    states: list[str] = []
    for s, lineno in decl["states"]:
        if s in states:
            raise ModelError(f"duplicate state {s!r}", lineno)
        if s == EPS:
            raise ModelError("'eps' is reserved", lineno)
        states.append(s)
    labels: dict[str, str | None] = {}
    for name, label, lineno in events:
        if name in labels:
            raise ModelError(f"duplicate event {name!r}", lineno)
        labels[name] = None if label == EPS else label
    known_s, known_e = set(states), set(labels)

    def need(kind, known, word, lineno):
        if word not in known:
            raise ModelError(f"undeclared {kind} {word!r}", lineno)
        return word

    initial = [need("state", known_s, s, ln) for s, ln in decl["initial"]]
    ctl = [need("event", known_e, e, ln) for e, ln in decl["controllable"]]
    faulty = [need("event", known_e, e, ln) for e, ln in decl["faulty"]]
    trans, seen = [], set()
    for (x, e, y), ln in triples["trans"]:
        t = (need("state", known_s, x, ln), need("event", known_e, e, ln), need("state", known_s, y, ln))
        if t in seen:
            raise ModelError(f"duplicate transition {' '.join(t)}", ln)
        seen.add(t)
        trans.append(t)
    extra = []
    for t, ln in triples["controllable_trans"]:
        if t not in seen:
            raise ModelError(f"controllable transition {' '.join(t)} is not declared", ln)
        extra.append(t)
    alphabet = [a for a, _ in decl["alphabet"]]
    if EPS in alphabet:
        raise ModelError("'eps' cannot be an alphabet symbol", decl["alphabet"][alphabet.index(EPS)][1])
    if not initial:
        warnings.warn("model has no initial state", stacklevel=3)
    return Fsa.build(states, initial, labels, trans, ctl, faulty, alphabet, extra)


def fsa_to_dict(a: Fsa) -> dict[str, Any]:
    used = {lab for lab in a.labels if lab is not None}
    name = a.transition_name
    return {
        "states": list(a.states),
        "initial": [a.states[x] for x in sorted(a.initial)],
        "events": [f"{e}:{lab if lab is not None else EPS}" for e, lab in zip(a.events, a.labels)],
        "controllable": [a.events[e] for e in sorted(a.controllable)],
        "faulty": [a.events[e] for e in sorted(a.faulty)],
        "alphabet": [s for s in a.alphabet if s not in used],
        "trans": [list(name(t)) for t in a.transitions],
        "controllable_trans": [list(name(t)) for t in sorted(a.controllable_extra)],
    }


def fsa_from_dict(data: dict[str, Any]) -> Fsa:
    unknown = set(data) - set(LIST_KEYS) - set(TRIPLE_KEYS)
    if unknown:
        raise ModelError(f"unknown keys {sorted(unknown)}")
    decl = {k: [(str(v), None) for v in data.get(k, [])] for k in LIST_KEYS if k != "events"}
    raw_events = data.get("events", [])
    if isinstance(raw_events, dict):
        raw_events = [f"{k}:{v if v is not None else EPS}" for k, v in raw_events.items()]
    events = []
    for word in raw_events:
        name, sep, label = str(word).partition(":")
        if not sep or not name or not label:
            raise ModelError(f"event must be 'name:label', got {word!r}")
        events.append((name, label, None))
    triples = {}
    for k in TRIPLE_KEYS:
        triples[k] = []
        for t in data.get(k, []):
            if len(t) != 3:
                raise ModelError(f"{k} entries need three fields, got {t!r}")
            triples[k].append((tuple(str(v) for v in t), None))
    return _assemble(decl, events, triples)


def serialize_model(a: Fsa) -> str:
    d = fsa_to_dict(a)
    lines = [
        "states: " + " ".join(d["states"]),
        "initial: " + " ".join(d["initial"]),
        "events: " + " ".join(d["events"]),
        "controllable: " + " ".join(d["controllable"]),
        "faulty: " + " ".join(d["faulty"]),
    ]
    if d["alphabet"]:
        lines.append("alphabet: " + " ".join(d["alphabet"]))
    lines += ["trans: " + " ".join(t) for t in d["trans"]]
    lines += ["controllable_trans: " + " ".join(t) for t in d["controllable_trans"]]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def load_model(path: str | Path) -> Fsa:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return fsa_from_dict(data)
    return parse_model(text)


def parse_spec(text: str, a: Fsa) -> frozenset[tuple[int, int]]:
    """Specified state pairs, one ``x y`` pair per line."""
    pairs = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if len(words) != 2:
            raise ModelError("spec lines hold two state names", lineno)
        try:
            pairs.add((a.state_index(words[0]), a.state_index(words[1])))
        except ModelError as exc:
            raise ModelError(str(exc), lineno) from None
    return frozenset(pairs)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(a: Fsa, name: str = "fsa") -> str:
    """Graphviz source; edges read ``event(label)``."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for x, s in enumerate(a.states):
        lines.append(f"  {_quote(s)} [shape=circle];")
    for x in sorted(a.initial):
        start = f"__start_{x}"
        lines.append(f'  {start} [shape=point, style=invis];')
        lines.append(f"  {start} -> {_quote(a.states[x])};")
    for x, e, y in a.transitions:
        lab = a.labels[e] if a.labels[e] is not None else "ε"
        text = f"{a.events[e]}({lab})"
        lines.append(f"  {_quote(a.states[x])} -> {_quote(a.states[y])} [label={_quote(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def state_pairs(a: Fsa, pairs: Iterable[tuple[int, int]]) -> list[list[str]]:
    return sorted([a.states[x], a.states[y]] for x, y in pairs)
