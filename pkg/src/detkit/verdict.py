from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .fsa import Fsa
from .witness import Witness

PROPERTIES = (
    "omega-k-delayed",
    "star-k-delayed",
    "omega-k1k2",
    "star-k1k2",
    "omega-k1k2-d",
    "star-k1k2-d",
    "diagnosable",
)


@dataclass
class Verdict:
    property: str
    params: dict[str, Any]
    holds: bool
    witness: Witness | None = None
    # layer name -> set of state-name tuples, in computation order
    layers: dict[str, frozenset[tuple[str, ...]]] = field(default_factory=dict)
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self, a: Fsa, layers: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "property": self.property,
            "params": dict(self.params),
            "holds": self.holds,
        }
        if self.note:
            out["note"] = self.note
        if self.witness is not None:
            out["witness"] = self.witness.to_json(a)
        if layers:
            out["layers"] = {
                name: sorted(list(t) if len(t) > 1 else t[0] for t in members)
                for name, members in self.layers.items()
            }
        return out


def name_layer(view, members) -> frozenset[tuple[str, ...]]:
    return frozenset(view.names(p) for p in members)
