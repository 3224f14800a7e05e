"""Interval partition of [0, 1), random vertex weights, and the two-step
interval coloring.

The unit interval is cut into ``2r - 1`` consecutive pieces

    Delta_1, delta_1, Delta_2, delta_2, ..., delta_{r-1}, Delta_r

with big pieces of length ``(1-p)/r`` and small pieces of length
``p/(r-1)``. Pieces are identified by an integer *slot* ``k`` in
``0 .. 2r-2`` (even slots are big, odd slots small). Vertices whose weight
lands in ``Delta_i`` take color ``i``; vertices in ``delta_i`` are decided
greedily in increasing weight order.

Two arithmetic modes exist. When ``p`` is a :class:`~fractions.Fraction` the
run is exact: endpoints and weights are rationals. Otherwise everything is
64-bit float, with each endpoint being the correctly rounded value of the
exact endpoint for the given float ``p``.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .hypergraph import Hypergraph

__all__ = [
    "PartitionParams",
    "Interval",
    "Decision",
    "ColoringTrace",
    "compute_p",
    "interval_layout",
    "locate",
    "slot_name",
    "slot_color",
    "assign_weights",
    "run_coloring",
    "color_by_slots",
    "is_panchromatic",
    "trace_to_json",
    "trace_from_json",
]

Number = Union[float, Fraction]


def compute_p(n: float, r: int) -> float:
    """Default partition parameter ``((r-1)/r) * (r-1)^2 * ln(n/ln n) / n``."""
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    if n < 3:
        raise ValueError(f"n must be at least 3 so that n/ln n > 1, got {n}")
    return ((r - 1) / r) * (r - 1) ** 2 * math.log(n / math.log(n)) / n


@dataclass(frozen=True)
class PartitionParams:
    r: int
    p: Number
    provenance: str = "override"

    def __post_init__(self):
        if self.r < 2:
            raise ValueError(f"r must be at least 2, got {self.r}")
        if isinstance(self.p, Rational) and not isinstance(self.p, Fraction):
            object.__setattr__(self, "p", Fraction(self.p))
        if not 0 < self.p < 1:
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        if self.provenance not in ("formula", "override"):
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @classmethod
    def from_formula(cls, n: float, r: int) -> "PartitionParams":
        return cls(r, compute_p(n, r), "formula")

    @property
    def exact(self) -> bool:
        return isinstance(self.p, Fraction)

    @property
    def mode(self) -> str:
        return "rational" if self.exact else "float"

    @property
    def big_length(self) -> Number:
        return (1 - self.p) / self.r

    @property
    def small_length(self) -> Number:
        return self.p / (self.r - 1)


class Interval(NamedTuple):
    slot: int
    left: Number
    right: Number

    @property
    def small(self) -> bool:
        return self.slot % 2 == 1

    @property
    def index(self) -> int:
        return (self.slot + 1) // 2 if self.small else self.slot // 2 + 1

    @property
    def name(self) -> str:
        return slot_name(self.slot)


def slot_name(slot: int) -> str:
    if slot % 2:
        return f"delta_{(slot + 1) // 2}"
    return f"Delta_{slot // 2 + 1}"


def slot_color(slot: int) -> int:
    """Color offered to a vertex in this slot (the lower of the two for small slots)."""
    return (slot + 1) // 2 if slot % 2 else slot // 2 + 1


def _exact_endpoints(r: int, p: Fraction) -> list[Fraction]:
    big = (1 - p) / r
    small = p / (r - 1)
    ends = [Fraction(0)]
    for i in range(1, r + 1):
        ends.append(i * big + (i - 1) * small)   # right end of Delta_i
        if i < r:
            ends.append(i * (big + small))       # right end of delta_i
    return ends


def interval_layout(params: PartitionParams) -> list[Interval]:
    """The ``2r-1`` half-open pieces, in order, covering [0, 1) exactly."""
    p = params.p if params.exact else Fraction(params.p)
    ends = _exact_endpoints(params.r, p)
    assert ends[-1] == 1
    if not params.exact:
        ends = [float(x) for x in ends]
    return [Interval(k, ends[k], ends[k + 1]) for k in range(2 * params.r - 1)]


def locate(x: Number, layout: Sequence[Interval]) -> Interval:
    if not 0 <= x < 1:
        raise ValueError(f"weight {x} outside [0, 1)")
    lefts = [iv.left for iv in layout]
    return layout[bisect_right(lefts, x) - 1]


def assign_weights(h: Union[Hypergraph, int], seed=None, rng: Optional[np.random.Generator] = None,
                   exact: bool = False) -> list[Number]:
    """I.i.d. uniform [0, 1) weights, one per vertex.

    With ``exact=True`` the float draws are converted to the rationals they
    represent exactly.
    """
    num_vertices = h.num_vertices if isinstance(h, Hypergraph) else int(h)
    if rng is None:
        rng = np.random.default_rng(seed)
    draws = rng.random(num_vertices).tolist()
    if exact:
        return [Fraction(x) for x in draws]
    return draws


@dataclass(frozen=True)
class Decision:
    """Record for one small-slot vertex: offered color, witness edges, result."""

    offered: int
    witnesses: tuple[int, ...]
    color: int


@dataclass
class ColoringTrace:
    params: PartitionParams
    slots: list[int]
    colors: list[int]
    order: list[int]
    decisions: dict[int, Decision]
    sigma: Optional[list[Number]] = None
    seed: Optional[int] = None
    position: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.position = {v: t for t, v in enumerate(self.order)}

    @property
    def r(self) -> int:
        return self.params.r

    def colored_before(self, v: int, u: int) -> bool:
        """Whether ``u`` already held its color when ``v`` was decided.

        Big-slot vertices are colored in step 1, before any small-slot one.
        """
        tu = self.position.get(u)
        if tu is None:
            return True
        tv = self.position.get(v)
        return tv is not None and tu < tv


def color_by_slots(h: Hypergraph, r: int, slots: Sequence[int], order: Sequence[int]):
    """Core of the algorithm given slot membership and small-slot order.

    The outcome depends on the weights only through these two things, which
    is what the exact oracle relies on.
    """
    inc = h.incidence()
    colors = [0] * h.num_vertices
    have = [[0] * (r + 2) for _ in h.edges]

    for v, k in enumerate(slots):
        if k % 2 == 0:
            c = k // 2 + 1
            colors[v] = c
            for e in inc[v]:
                have[e][c] += 1

    decisions = {}
    for v in order:
        i = (slots[v] + 1) // 2
        witnesses = tuple(e for e in inc[v] if have[e][i] == 0)
        c = i if witnesses else i + 1
        colors[v] = c
        for e in inc[v]:
            have[e][c] += 1
        decisions[v] = Decision(i, witnesses, c)
    return colors, decisions


def run_coloring(h: Hypergraph, params: PartitionParams, sigma: Sequence[Number],
                 seed: Optional[int] = None) -> ColoringTrace:
    if len(sigma) != h.num_vertices:
        raise ValueError(f"sigma has {len(sigma)} entries for {h.num_vertices} vertices")
    if params.exact and not all(isinstance(x, Rational) for x in sigma):
        raise ValueError("rational mode needs rational weights")
    layout = interval_layout(params)
    lefts = [iv.left for iv in layout]
    slots = []
    for x in sigma:
        if not 0 <= x < 1:
            raise ValueError(f"weight {x} outside [0, 1)")
        slots.append(bisect_right(lefts, x) - 1)
    order = sorted((v for v, k in enumerate(slots) if k % 2), key=lambda v: (sigma[v], v))
    colors, decisions = color_by_slots(h, params.r, slots, order)
    return ColoringTrace(params, slots, colors, order, decisions, list(sigma), seed)


def is_panchromatic(h: Hypergraph, trace: ColoringTrace) -> tuple[bool, list[tuple[int, int]]]:
    """Return ``(ok, failures)``; failures lists every ``(edge, missing color)``."""
    r = trace.r
    failures = []
    for k, e in enumerate(h.edges):
        present = {trace.colors[v] for v in e}
        failures.extend((k, c) for c in range(1, r + 1) if c not in present)
    return not failures, failures


def _num_to_json(x: Number):
    return f"{x.numerator}/{x.denominator}" if isinstance(x, Fraction) else x


def _num_from_json(x) -> Number:
    return Fraction(x) if isinstance(x, str) else float(x)


def trace_to_json(h: Hypergraph, trace: ColoringTrace) -> dict:
    vertices = []
    for v in range(h.num_vertices):
        rec = {
            "id": v,
            "sigma": None if trace.sigma is None else _num_to_json(trace.sigma[v]),
            "interval": slot_name(trace.slots[v]),
            "color": trace.colors[v],
        }
        if v in trace.decisions:
            rec["witnesses"] = list(trace.decisions[v].witnesses)
        vertices.append(rec)
    return {
        "meta": {
            "seed": trace.seed,
            "n": h.n,
            "r": trace.r,
            "p": _num_to_json(trace.params.p),
            "p_source": trace.params.provenance,
            "mode": trace.params.mode,
        },
        "vertices": vertices,
    }


def trace_from_json(h: Hypergraph, data: dict) -> ColoringTrace:
    """Rebuild a trace by re-running the coloring on the recorded weights,
    and reject the document if its recorded colors or witnesses disagree."""
    meta = data["meta"]
    params = PartitionParams(int(meta["r"]), _num_from_json(meta["p"]), meta.get("p_source", "override"))
    if meta.get("n") is not None and int(meta["n"]) != h.n:
        raise ValueError(f"trace was recorded for n={meta['n']}, hypergraph has n={h.n}")
    verts = sorted(data["vertices"], key=lambda rec: rec["id"])
    if [rec["id"] for rec in verts] != list(range(h.num_vertices)):
        raise ValueError("trace vertex ids do not match the hypergraph")
    sigma = [_num_from_json(rec["sigma"]) for rec in verts]
    trace = run_coloring(h, params, sigma, meta.get("seed"))
    for rec in verts:
        v = rec["id"]
        if rec["color"] != trace.colors[v] or rec["interval"] != slot_name(trace.slots[v]):
            raise ValueError(f"trace disagrees with a replay at vertex {v}")
        if "witnesses" in rec and tuple(rec["witnesses"]) != trace.decisions[v].witnesses:
            raise ValueError(f"recorded witnesses disagree with a replay at vertex {v}")
    return trace
