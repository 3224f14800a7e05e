"""Exhaustive, exact computations on tiny hypergraphs.

The interval coloring sees the weights only through (a) which of the
``2r-1`` pieces each vertex lands in and (b) the relative order of
vertices sharing a small piece. Enumerating all piece assignments, each
weighted by the product of piece lengths, and all orders inside each small
piece (uniform and independent across pieces) therefore gives exact event
probabilities as rationals.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence, Union

from .coloring import ColoringTrace, PartitionParams, color_by_slots
from .conflicts import forms_snake_ball, short_edges_from_slots
from .hypergraph import Hypergraph, validate

__all__ = [
    "BudgetExceeded",
    "panchromatic_exists",
    "exact_success_probability",
    "exact_event_probability",
    "enumeration_cost",
    "minimum_failing_edge_count",
    "format_rational",
]

ENUMERATION_BUDGET = 10 ** 8
MAX_ORACLE_VERTICES = 12


class BudgetExceeded(RuntimeError):
    pass


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator} {float(x):.15f}"


# ----------------------------------------------------------------------------
# decision version


def panchromatic_exists(h: Hypergraph, r: int, budget: int = ENUMERATION_BUDGET,
                        ) -> tuple[bool, Optional[list[int]]]:
    """Backtracking search for a coloring in which every edge meets all ``r``
    colors. Returns ``(found, coloring)`` with colors in ``1..r``.

    Pruning: an edge whose uncolored vertices are fewer than its missing
    colors is dead. Color 1 is fixed on the first vertex of the search
    order when ``r >= 2`` (color symmetry).
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if h.num_vertices > 16 and r ** h.num_vertices > budget:
        raise BudgetExceeded(f"{r}^{h.num_vertices} colorings exceed the budget {budget}")
    if any(len(set(e)) < r for e in h.edges):
        return False, None

    inc = h.incidence()
    # most constrained vertices first
    order = sorted(range(h.num_vertices), key=lambda v: -len(inc[v]))
    colors = [0] * h.num_vertices
    have = [[0] * (r + 1) for _ in h.edges]
    missing = [r] * h.num_edges
    free = [len(e) for e in h.edges]

    def place(v: int, c: int) -> bool:
        alive = True
        for e in inc[v]:
            free[e] -= 1
            if have[e][c] == 0:
                missing[e] -= 1
            have[e][c] += 1
            if free[e] < missing[e]:
                alive = False
        colors[v] = c
        return alive

    def unplace(v: int, c: int) -> None:
        for e in inc[v]:
            have[e][c] -= 1
            if have[e][c] == 0:
                missing[e] += 1
            free[e] += 1
        colors[v] = 0

    def search(k: int, used: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        # colors beyond used+1 are interchangeable with used+1
        for c in range(1, min(r, used + 1) + 1):
            ok = place(v, c)
            if ok and search(k + 1, max(used, c)):
                return True
            unplace(v, c)
        return False

    if search(0, 0):
        return True, list(colors)
    return False, None


def minimum_failing_edge_count(n: int, r: int, max_edges: int) -> Optional[int]:
    """Smallest number of edges of an n-uniform hypergraph with no
    panchromatic r-coloring, searching all edge multisets with up to
    ``max_edges`` edges on ``n * max_edges`` vertices (enough to realise every
    isomorphism type). ``None`` if every such hypergraph is colorable."""
    V = n * max_edges
    candidates = list(itertools.combinations(range(V), n))
    for m in range(0, max_edges + 1):
        for edges in itertools.combinations_with_replacement(candidates, m):
            found, _ = panchromatic_exists(Hypergraph(n, V, edges), r)
            if not found:
                return m
    return None


# ----------------------------------------------------------------------------
# exact law of the interval coloring


def _active_vertices(h: Hypergraph) -> list[int]:
    # vertices in no edge cannot influence any edge's colors
    return sorted({v for e in h.edges for v in e})


def enumeration_cost(num_vertices: int, r: int) -> int:
    """Number of (assignment, small-piece order) pairs: sum over assignments
    of ``prod m_i!`` where ``m_i`` counts vertices in small piece ``i``."""
    slots = 2 * r - 1
    total = 0
    for counts in _compositions(num_vertices, slots):
        ways = math.factorial(num_vertices)
        for c in counts:
            ways //= math.factorial(c)
        for k in range(1, slots, 2):
            ways *= math.factorial(counts[k])
        total += ways
    return total


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _enumerate(h: Hypergraph, r: int, p: Fraction, budget: int
               ) -> Iterator[tuple[Fraction, list[int], list[list[int]]]]:
    """Yield ``(probability weight, slots, orders)`` classes; ``orders`` is the
    list of admissible small-piece processing orders, equally likely."""
    if not isinstance(p, Fraction):
        raise TypeError("the exact oracle needs a rational p (use fractions.Fraction)")
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    active = _active_vertices(h)
    if len(active) > MAX_ORACLE_VERTICES:
        raise BudgetExceeded(f"{len(active)} active vertices exceed the limit {MAX_ORACLE_VERTICES}")
    cost = enumeration_cost(len(active), r)
    if cost > budget:
        raise BudgetExceeded(f"{cost} colorings to enumerate exceed the budget {budget}")

    lengths = [(1 - p) / r if k % 2 == 0 else p / (r - 1) for k in range(2 * r - 1)]
    slots = [0] * h.num_vertices
    for assignment in itertools.product(range(2 * r - 1), repeat=len(active)):
        weight = Fraction(1)
        groups: dict[int, list[int]] = {}
        for v, k in zip(active, assignment):
            slots[v] = k
            weight *= lengths[k]
            if k % 2:
                groups.setdefault(k, []).append(v)
        per_piece = [list(itertools.permutations(groups[k])) for k in sorted(groups)]
        orders = [[v for block in combo for v in block] for combo in itertools.product(*per_piece)]
        yield weight, list(slots), orders


Event = Union[str, tuple]


def _event_predicate(h: Hypergraph, r: int, event: Event) -> Callable[[ColoringTrace], bool]:
    if event in ("success", "failure"):
        want_success = event == "success"

        def pred(trace):
            ok = all(len({trace.colors[v] for v in e}) == r for e in h.edges)
            return ok == want_success
        return pred

    kind, arg = event
    if kind == "short":
        edge = int(arg)
        if not 0 <= edge < h.num_edges:
            raise ValueError(f"unknown edge index {edge}")
        return lambda trace: bool(short_edges_from_slots(h, r, trace.slots, [edge]))
    if kind == "snake":
        tup = tuple(int(e) for e in arg)
        if len(tup) != r:
            raise ValueError(f"snake-ball tuple must have {r} edges, got {len(tup)}")
        if any(not 0 <= e < h.num_edges for e in tup):
            raise ValueError(f"unknown edge index in tuple {tup}")

        def pred(trace):
            if short_edges_from_slots(h, r, trace.slots, sorted(set(tup))):
                return False
            return forms_snake_ball(h, trace, tup)
        return pred
    raise ValueError(f"unknown event {event!r}")


def exact_event_probability(h: Hypergraph, r: int, p: Fraction, event: Event,
                            budget: int = ENUMERATION_BUDGET) -> Fraction:
    """Exact probability of ``event`` under the interval coloring.

    ``event`` is ``"success"``, ``"failure"``, ``("short", edge)`` or
    ``("snake", (e_1, ..., e_r))``; the snake event is "the ordered tuple
    forms a snake ball and none of its edges is short".
    """
    problem = validate(h)
    if problem is not None:
        raise ValueError(problem)
    pred = _event_predicate(h, r, event)
    params = PartitionParams(r, p)
    total = Fraction(0)
    for weight, slots, orders in _enumerate(h, r, p, budget):
        hits = 0
        for order in orders:
            colors, decisions = color_by_slots(h, r, slots, order)
            if pred(ColoringTrace(params, slots, colors, order, decisions)):
                hits += 1
        if hits:
            total += weight * Fraction(hits, len(orders))
    return total


def exact_success_probability(h: Hypergraph, r: int, p: Fraction,
                              budget: int = ENUMERATION_BUDGET) -> Fraction:
    return exact_event_probability(h, r, p, "success", budget)
