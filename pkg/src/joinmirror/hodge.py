"""
Schoen fiber products of rational elliptic surfaces: Euler numbers, node
counts, and Hodge numbers of the small resolutions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Tuple


@dataclass(frozen=True)
class KodairaFiber:
    """A singular fiber: kind "I" with b components (b >= 0), or "II"."""

    kind: str
    b: int = 0

    def __post_init__(self):
        if self.kind not in ("I", "II"):
            raise ValueError(f"unsupported fiber type {self.kind}")
        if self.kind == "I" and self.b < 0:
            raise ValueError("I_b needs b >= 0")

    @property
    def components(self) -> int:
        return max(self.b, 1) if self.kind == "I" else 1

    @property
    def euler(self) -> int:
        return self.b if self.kind == "I" else 2

    def __str__(self):
        return f"I{self.b}" if self.kind == "I" else "II"


def I(b: int) -> KodairaFiber:
    return KodairaFiber("I", b)


II = KodairaFiber("II")


@dataclass
class SurfaceSpec:
    """A rational elliptic surface with its singular fibers over marked points."""

    name: str
    fibers: List[Tuple[str, KodairaFiber]]

    def __post_init__(self):
        points = [p for p, _ in self.fibers]
        if len(set(points)) != len(points):
            raise ValueError(f"{self.name}: repeated marked point")
        if self.euler() != 12:
            raise ValueError(f"{self.name}: fiber Euler numbers sum to {self.euler()}, not 12")

    def euler(self) -> int:
        return sum(f.euler for _, f in self.fibers)

    def fiber_at(self, point: str) -> KodairaFiber | None:
        for p, f in self.fibers:
            if p == point:
                return f
        return None

    @classmethod
    def from_json(cls, data) -> "SurfaceSpec":
        if isinstance(data, str):
            data = json.loads(data)
        fibers = []
        for entry in data["fibers"]:
            kind = entry["kind"]
            fibers.append((str(entry["point"]), KodairaFiber(kind, int(entry.get("b", 0)))))
        return cls(data["name"], fibers)

    def to_json(self) -> dict:
        return {"name": self.name,
                "fibers": [{"point": p, "kind": f.kind, "b": f.b} for p, f in self.fibers]}


@dataclass
class FiberProductSpec:
    """S1 x_{P^1} S2; the shared points are where both surfaces are singular."""

    s1: SurfaceSpec
    s2: SurfaceSpec
    shared: List[str] = field(init=False)

    def __post_init__(self):
        pts2 = {p for p, _ in self.s2.fibers}
        self.shared = [p for p, _ in self.s1.fibers if p in pts2]

    def shared_fibers(self) -> List[Tuple[str, KodairaFiber, KodairaFiber]]:
        return [(p, self.s1.fiber_at(p), self.s2.fiber_at(p)) for p in self.shared]

    def _require_ib(self):
        for p, f1, f2 in self.shared_fibers():
            if f1.kind != "I" or f2.kind != "I" or not f1.b or not f2.b:
                raise ValueError(f"shared fiber over {p} is {f1} x {f2}; only I_b x I_b is supported")


def euler_fiber_product(spec: FiberProductSpec) -> int:
    """Sum over shared points of e(F1) e(F2); fibers over all other points are smooth
    in one factor and contribute nothing."""
    spec._require_ib()
    return sum(f1.euler * f2.euler for _, f1, f2 in spec.shared_fibers())


def node_count(spec: FiberProductSpec) -> int:
    """Ordinary double points: b1 * b2 over each shared I_b1 x I_b2 point."""
    spec._require_ib()
    return sum(f1.b * f2.b for _, f1, f2 in spec.shared_fibers())


def euler_resolved(spec: FiberProductSpec) -> int:
    """A small resolution replaces each node by a P^1, adding one to the Euler number."""
    return euler_fiber_product(spec) + node_count(spec)


def schoen_h11(spec: FiberProductSpec, d: int = 0) -> int:
    """d + 19 + sum b1 b2 - sum b1 - sum b2 + #shared, sums over shared points."""
    if d not in (0, 1):
        raise ValueError("isogeny flag must be 0 or 1")
    spec._require_ib()
    shared = spec.shared_fibers()
    return (d + 19 + sum(f1.b * f2.b for _, f1, f2 in shared)
            - sum(f1.b for _, f1, _ in shared) - sum(f2.b for _, _, f2 in shared)
            + len(shared))


def hodge_pair(spec: FiberProductSpec, d: int = 0) -> Tuple[int, int]:
    """(h11, h21) using e = 2 (h11 - h21)."""
    e = euler_resolved(spec)
    if e % 2:
        raise ValueError(f"odd Euler number {e}")
    h11 = schoen_h11(spec, d)
    return h11, h11 - e // 2


# The five surfaces.  Only 0 and infinity are shared between any two of them;
# the remaining singular fibers sit over points private to each surface.
T0BAR = SurfaceSpec("T0bar", [("0", I(5)), ("x1bar", I(1)), ("x2bar", I(1)), ("inf", I(5))])
T0 = SurfaceSpec("T0", [("0", I(5)), ("x1", I(1)), ("x2", I(1)), ("inf", I(5))])
T1 = SurfaceSpec("T1", [("0", I(6)), ("y1", I(2)), ("y2", I(1)), ("inf", I(3))])
T2 = SurfaceSpec("T2", [("0", I(7)), ("z1", I(1)), ("z2", II), ("inf", I(2))])
T3 = SurfaceSpec("T3", [("0", I(6)), ("w1", I(3)), ("w2", I(1)), ("inf", I(2))])

SURFACES = {s.name: s for s in (T0BAR, T0, T1, T2, T3)}

PAIRINGS = {
    "X0*": FiberProductSpec(T0BAR, T0),
    "X1*": FiberProductSpec(T0BAR, T1),
    "X2*": FiberProductSpec(T0BAR, T2),
    "X3*": FiberProductSpec(T0BAR, T3),
}

# (h11, h21) of the linear sections X_i; the X0 pair is the known value for
# the ten-section linear section of the join of two copies of G(2,5).
JOIN_HODGE = {"X0": (1, 51), "X1": (2, 47), "X2": (2, 47), "X3": (3, 43)}


def hodge_table(d: int = 0) -> Dict[str, dict]:
    out = {}
    for name, spec in PAIRINGS.items():
        h11, h21 = hodge_pair(spec, d)
        partner = JOIN_HODGE[name.rstrip("*")]
        out[name] = {"euler_fiber_product": euler_fiber_product(spec),
                     "nodes": node_count(spec), "euler_resolved": euler_resolved(spec),
                     "h11": h11, "h21": h21, "mirror_of": name.rstrip("*"),
                     "mirror_swap_holds": (h21, h11) == partner}
    return out
