import itertools
from fractions import Fraction

import pytest

from panchroma.bounds import SnakeBallOverlap, short_edge_expected_bound, snake_ball_probability_bound
from panchroma.coloring import PartitionParams, is_panchromatic, run_coloring
from panchroma.hypergraph import Hypergraph
from panchroma.oracle import (
    BudgetExceeded,
    enumeration_cost,
    exact_event_probability,
    exact_success_probability,
    format_rational,
    minimum_failing_edge_count,
    panchromatic_exists,
)

from conftest import FIXTURES, path3, single_edge, triangle

FIXTURE_IDS = [f[0] for f in FIXTURES]


def reference_success(h, r, p):
    """Independent route: one representative rational weight vector per
    (piece assignment, order inside small pieces), fed to a naive
    re-implementation of the two-step coloring."""
    lengths = [(1 - p) / r if k % 2 == 0 else p / (r - 1) for k in range(2 * r - 1)]
    lefts = [sum(lengths[:k], Fraction(0)) for k in range(2 * r - 1)]
    V = h.num_vertices
    total = Fraction(0)
    for assignment in itertools.product(range(2 * r - 1), repeat=V):
        weight = Fraction(1)
        for k in assignment:
            weight *= lengths[k]
        pieces = {k: [v for v in range(V) if assignment[v] == k] for k in range(1, 2 * r - 1, 2)}
        orders = list(itertools.product(*(itertools.permutations(vs) for vs in pieces.values())))
        wins = 0
        for combo in orders:
            sigma = [lefts[k] + lengths[k] / 2 for k in assignment]
            for k, perm in zip(pieces, combo):
                for rank, v in enumerate(perm):
                    sigma[v] = lefts[k] + lengths[k] * (rank + 1) / (len(perm) + 1)
            colors = [0] * V
            for v in range(V):
                if assignment[v] % 2 == 0:
                    colors[v] = assignment[v] // 2 + 1
            for v in sorted((v for v in range(V) if assignment[v] % 2), key=lambda v: sigma[v]):
                i = (assignment[v] + 1) // 2
                lacking = any(all(colors[u] != i for u in e) for e in h.edges if v in e)
                colors[v] = i if lacking else i + 1
            wins += all(len({colors[u] for u in e}) == r for e in h.edges)
        total += weight * Fraction(wins, len(orders))
    return total


class TestExactLaw:
    def test_single_edge(self):
        h = single_edge()
        assert exact_success_probability(h, 2, Fraction(1, 5)) == Fraction(17, 25)
        assert exact_event_probability(h, 2, Fraction(1, 5), "failure") == Fraction(8, 25)
        assert exact_event_probability(h, 2, Fraction(1, 5), ("short", 0)) == Fraction(8, 25)

    @pytest.mark.parametrize("name,h,r,p", FIXTURES, ids=FIXTURE_IDS)
    def test_matches_reference(self, name, h, r, p):
        assert exact_success_probability(h, r, p) == reference_success(h, r, p)

    @pytest.mark.parametrize("name,h,r,p", FIXTURES, ids=FIXTURE_IDS)
    def test_complement(self, name, h, r, p):
        s = exact_success_probability(h, r, p)
        f = exact_event_probability(h, r, p, "failure")
        assert s + f == 1 and 0 <= s <= 1

    def test_rational_trace_agrees(self):
        # exact-mode run_coloring on hand-picked rational weights
        h, p = path3(), Fraction(1, 5)
        params = PartitionParams(2, p)
        sigma = [Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)]
        trace = run_coloring(h, params, sigma)
        assert trace.colors == [1, 1, 2]
        assert not is_panchromatic(h, trace)[0]

    def test_isolated_vertices_ignored(self):
        h = Hypergraph(2, 5, ((0, 1),))
        assert exact_success_probability(h, 2, Fraction(1, 5)) == Fraction(17, 25)

    @pytest.mark.parametrize("name,h,r,p", FIXTURES, ids=FIXTURE_IDS)
    def test_short_edge_union_bound(self, name, h, r, p):
        for e in range(h.num_edges):
            exact = exact_event_probability(h, r, p, ("short", e))
            bound = short_edge_expected_bound(h.n, r, float(p), num_edges=1).value()
            assert exact <= bound + 1e-12
            if r == 2:
                # the two conditions are disjoint for r = 2, so the union bound is exact
                assert float(exact) == pytest.approx(bound, rel=1e-12)

    def test_float_p_rejected(self):
        with pytest.raises(TypeError):
            exact_success_probability(single_edge(), 2, 0.2)

    def test_bad_event(self):
        with pytest.raises(ValueError):
            exact_event_probability(single_edge(), 2, Fraction(1, 5), ("snake", (0,)))
        with pytest.raises(ValueError):
            exact_event_probability(single_edge(), 2, Fraction(1, 5), ("short", 3))
        with pytest.raises(ValueError):
            exact_event_probability(single_edge(), 2, Fraction(1, 5), "sometimes")


class TestSnakeBallLaw:
    def test_two_edge_path(self):
        h = path3()
        assert exact_event_probability(h, 2, Fraction(1, 5), ("snake", (0, 1))) == Fraction(37, 750)
        assert exact_event_probability(h, 2, Fraction(1, 10), ("snake", (0, 1))) == Fraction(299, 12000)

    @pytest.mark.parametrize("name,h,r,p", FIXTURES, ids=FIXTURE_IDS)
    def test_distinct_tuples_within_bound(self, name, h, r, p):
        for tup in itertools.permutations(range(h.num_edges), r):
            exact = exact_event_probability(h, r, p, ("snake", tup))
            ov = SnakeBallOverlap.from_edges([h.edges[e] for e in tup])
            bound = snake_ball_probability_bound(h.n, r, float(p), ov)
            assert float(exact) <= bound.value() + 1e-12

    def test_repeated_edge_tuple_escapes_bound(self):
        # (e, e, e) is a genuine snake ball for a lone edge with one vertex in
        # each small piece, but the bound's counting assumes distinct edges
        h = Hypergraph(2, 3, ((0, 1), (1, 2)))
        exact = exact_event_probability(h, 3, Fraction(1, 10), ("snake", (0, 0, 0)))
        assert exact == Fraction(1, 200)
        ov = SnakeBallOverlap.from_edges([h.edges[0]] * 3)
        assert float(exact) > snake_ball_probability_bound(2, 3, 0.1, ov).value()


class TestExists:
    def test_single_edge(self):
        ok, coloring = panchromatic_exists(single_edge(), 2)
        assert ok and sorted(coloring) == [1, 2]

    def test_triangle_fails(self):
        assert panchromatic_exists(triangle(), 2) == (False, None)

    def test_small_edge(self):
        assert not panchromatic_exists(single_edge(), 3)[0]

    @pytest.mark.parametrize("name,h,r,p", FIXTURES, ids=FIXTURE_IDS)
    def test_consistent_with_success(self, name, h, r, p):
        ok, coloring = panchromatic_exists(h, r)
        if ok:
            assert all(len({coloring[v] for v in e}) == r for e in h.edges)
        if exact_success_probability(h, r, p) > 0:
            assert ok

    def test_minimum(self):
        assert minimum_failing_edge_count(2, 2, 3) == 3
        assert minimum_failing_edge_count(2, 2, 2) is None

    def test_budget(self):
        big = Hypergraph(2, 20, tuple((i, i + 1) for i in range(19)))
        with pytest.raises(BudgetExceeded):
            panchromatic_exists(big, 3, budget=1000)


class TestBudget:
    def test_cost_formula(self):
        # r=2, two vertices: 9 assignments, one of them puts both in the small piece (2 orders)
        assert enumeration_cost(2, 2) == 10

    def test_too_many_vertices(self):
        h = Hypergraph(2, 14, tuple((i, i + 1) for i in range(13)))
        with pytest.raises(BudgetExceeded):
            exact_success_probability(h, 2, Fraction(1, 5))

    def test_explicit_budget(self):
        with pytest.raises(BudgetExceeded):
            exact_success_probability(path3(), 2, Fraction(1, 5), budget=5)


def test_format_rational():
    assert format_rational(Fraction(17, 25)) == "17/25 0.680000000000000"
