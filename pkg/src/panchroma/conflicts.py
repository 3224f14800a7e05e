"""Failure structure of the interval coloring: short edges and snake balls.

An edge is *short* if for some ``1 <= i <= r-1`` it misses
``Delta_i + delta_i`` or misses ``Delta_{i+1} + delta_i``. When a coloring
fails without any short edge, the failing edge starts a chain
``C_1, ..., C_r`` where ``C_j`` and ``C_{j+1}`` form a conflicting pair in
``delta_{r-j}``: the last vertex of ``C_j`` there is the first vertex of
``C_{j+1}`` there, and ``C_{j+1}`` lacked color ``r-j`` when that vertex was
colored. Such a chain is a snake ball.

Edges of a snake ball need not be distinct.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .coloring import ColoringTrace, PartitionParams, interval_layout, is_panchromatic, locate
from .hypergraph import Hypergraph

__all__ = [
    "ShortEdge",
    "ShortEdgeReport",
    "SnakeBall",
    "SnakeBallError",
    "find_short_edges",
    "short_edges_from_slots",
    "extract_snake_ball",
    "verify_snake_ball",
    "forms_snake_ball",
]

LOWER = "missing Delta_i+delta_i"
UPPER = "missing Delta_i+1+delta_i"


class SnakeBallError(ValueError):
    """Raised when extraction preconditions fail, or when a witness is missing
    (which would mean the coloring implementation is wrong)."""


@dataclass(frozen=True)
class ShortEdge:
    edge: int
    i: int
    condition: str


@dataclass(frozen=True)
class ShortEdgeReport:
    entries: tuple[ShortEdge, ...]

    @property
    def edges(self) -> list[int]:
        return sorted({s.edge for s in self.entries})

    def __bool__(self) -> bool:
        return bool(self.entries)

    def to_json(self) -> list[dict]:
        return [{"edge": s.edge, "i": s.i, "condition": s.condition} for s in self.entries]


@dataclass(frozen=True)
class SnakeBall:
    edges: tuple[int, ...]
    links: tuple[int, ...]
    failing_color: int

    @property
    def r(self) -> int:
        return len(self.edges)

    @property
    def delta_indices(self) -> tuple[int, ...]:
        """Small-interval index for each link: link ``j`` lives in ``delta_{r-j}``."""
        return tuple(self.r - j for j in range(1, self.r))

    def to_json(self) -> dict:
        return {"edges": list(self.edges), "links": list(self.links),
                "delta_indices": list(self.delta_indices)}


def short_edges_from_slots(h: Hypergraph, r: int, slots: Sequence[int],
                           edges: Optional[Sequence[int]] = None) -> ShortEdgeReport:
    entries = []
    for k in range(h.num_edges) if edges is None else edges:
        hit = {slots[v] for v in h.edges[k]}
        for i in range(1, r):
            # Delta_i is slot 2i-2, delta_i is 2i-1, Delta_{i+1} is 2i
            if 2 * i - 2 not in hit and 2 * i - 1 not in hit:
                entries.append(ShortEdge(k, i, LOWER))
            if 2 * i not in hit and 2 * i - 1 not in hit:
                entries.append(ShortEdge(k, i, UPPER))
    return ShortEdgeReport(tuple(entries))


def find_short_edges(h: Hypergraph, params: PartitionParams, sigma: Sequence) -> ShortEdgeReport:
    layout = interval_layout(params)
    slots = [locate(x, layout).slot for x in sigma]
    return short_edges_from_slots(h, params.r, slots)


def _small_members(h: Hypergraph, trace: ColoringTrace, edge: int, index: int) -> list[int]:
    """Vertices of ``edge`` in ``delta_index``, in processing order."""
    slot = 2 * index - 1
    return sorted((v for v in h.edges[edge] if trace.slots[v] == slot), key=trace.position.__getitem__)


def extract_snake_ball(h: Hypergraph, trace: ColoringTrace, failing_edge: int) -> SnakeBall:
    """Follow conflicting pairs down from an edge that misses color ``r``.

    At each step the next edge is the lowest-index witness recorded for the
    link vertex.
    """
    r = trace.r
    if not 0 <= failing_edge < h.num_edges:
        raise SnakeBallError(f"edge index {failing_edge} out of range")
    if any(trace.colors[v] == r for v in h.edges[failing_edge]):
        raise SnakeBallError(f"no failing edge: edge {failing_edge} has color {r}")
    if short_edges_from_slots(h, r, trace.slots):
        raise SnakeBallError("short edge present")

    chain = [failing_edge]
    links = []
    for j in range(1, r):
        members = _small_members(h, trace, chain[-1], r - j)
        if not members:
            raise SnakeBallError(f"witness missing: edge {chain[-1]} has no vertex in delta_{r - j}")
        v = members[-1]
        witnesses = trace.decisions[v].witnesses
        if trace.colors[v] != r - j or not witnesses:
            raise SnakeBallError(f"witness missing for vertex {v} in delta_{r - j}")
        links.append(v)
        chain.append(min(witnesses))
    return SnakeBall(tuple(chain), tuple(links), r)


def verify_snake_ball(h: Hypergraph, trace: ColoringTrace, sb: SnakeBall) -> Optional[str]:
    """Re-check a snake ball from the trace's colors and processing order only
    (recorded witness sets are not consulted). ``None`` means valid."""
    r = trace.r
    if len(sb.edges) != r or len(sb.links) != r - 1:
        return f"snake ball needs {r} edges and {r - 1} links"
    if any(not 0 <= e < h.num_edges for e in sb.edges):
        return "edge index out of range"
    if any(trace.colors[v] == r for v in h.edges[sb.edges[0]]):
        return f"first edge has color {r}"
    for j in range(1, r):
        idx = r - j
        v = sb.links[j - 1]
        cur, nxt = sb.edges[j - 1], sb.edges[j]
        members = _small_members(h, trace, cur, idx)
        if v not in members:
            return f"link {j} not in edge {cur} within delta_{idx}"
        if members[-1] != v:
            return "link not last vertex"
        members = _small_members(h, trace, nxt, idx)
        if v not in members:
            return f"link {j} not in edge {nxt} within delta_{idx}"
        if members[0] != v:
            return "link not first vertex"
        if any(trace.colors[u] == idx and trace.colored_before(v, u) for u in h.edges[nxt]):
            return "witness edge had color"
    return None


def forms_snake_ball(h: Hypergraph, trace: ColoringTrace, edges: Sequence[int]) -> bool:
    """Whether the ordered tuple ``edges`` is a snake ball in this run, with
    link vertices forced to be the last small-interval vertices of each edge."""
    r = trace.r
    if len(edges) != r:
        raise ValueError(f"tuple must have {r} edges")
    links = []
    for j in range(1, r):
        members = _small_members(h, trace, edges[j - 1], r - j)
        if not members:
            return False
        links.append(members[-1])
    return verify_snake_ball(h, trace, SnakeBall(tuple(edges), tuple(links), r)) is None


def failing_edges(h: Hypergraph, trace: ColoringTrace) -> list[int]:
    ok, failures = is_panchromatic(h, trace)
    return sorted({e for e, _ in failures})
