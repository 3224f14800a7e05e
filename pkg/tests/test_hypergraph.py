import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from panchroma.hypergraph import (
    Hypergraph,
    HypergraphFormatError,
    edge_degrees,
    random_uniform,
    read_hg,
    validate,
    write_hg,
)


class TestValidate:
    def test_minimal_valid(self):
        assert validate(Hypergraph(2, 2, ((0, 1),))) is None

    def test_duplicate_vertex(self):
        assert validate(Hypergraph(3, 3, ((0, 0, 1),))) == "duplicate vertex in edge 0"

    def test_out_of_range(self):
        msg = validate(Hypergraph(2, 3, ((0, 5),)))
        assert msg.startswith("vertex id out of range")

    def test_wrong_size(self):
        assert validate(Hypergraph(2, 3, ((0, 1), (0, 1, 2)))) == "edge 1 has 3 vertices, expected 2"

    def test_duplicate_edges_allowed(self):
        assert validate(Hypergraph(2, 2, ((0, 1), (1, 0)))) is None


class TestRandomUniform:
    def test_deterministic(self):
        a = random_uniform(2, 3, 3, seed=1)
        assert a == random_uniform(2, 3, 3, seed=1)
        assert a.num_edges == 3 and validate(a) is None

    def test_forced_edge(self):
        assert random_uniform(3, 3, 1, seed=123).edges == ((0, 1, 2),)

    def test_rejects_oversized_edges(self):
        with pytest.raises(ValueError):
            random_uniform(4, 3, 1, seed=0)

    def test_different_seeds_differ(self):
        assert random_uniform(5, 50, 200, seed=1) != random_uniform(5, 50, 200, seed=2)

    def test_pair_frequencies(self):
        # 1000 uniform pairs of 10 vertices: every pair count within 5 sigma of
        # the multinomial mean, and a chi-square statistic far below the 5-sigma
        # tail of chi2(44) (mean 44, sd sqrt(88)).
        h = random_uniform(2, 10, 1000, seed=7)
        counts = {pair: 0 for pair in itertools.combinations(range(10), 2)}
        for e in h.edges:
            counts[e] += 1
        q = 1 / 45
        mean = 1000 * q
        sd = math.sqrt(1000 * q * (1 - q))
        assert all(abs(c - mean) <= 5 * sd for c in counts.values())
        chi2 = sum((c - mean) ** 2 / mean for c in counts.values())
        assert chi2 <= 44 + 5 * math.sqrt(88)


def _degrees_by_pairs(h):
    return [sum(1 for j, f in enumerate(h.edges) if j != k and set(e) & set(f))
            for k, e in enumerate(h.edges)]


class TestEdgeDegrees:
    def test_triangle(self, tri):
        prof = edge_degrees(tri)
        assert prof.degrees == (2, 2, 2) and prof.max_degree == 2

    def test_disjoint(self):
        prof = edge_degrees(Hypergraph(2, 4, ((0, 1), (2, 3))))
        assert prof.degrees == (0, 0) and prof.max_degree == 0

    def test_path(self):
        prof = edge_degrees(Hypergraph(2, 4, ((0, 1), (1, 2), (2, 3))))
        assert prof.degrees == (1, 2, 1) and prof.max_degree == 2

    def test_duplicates_count_by_position(self):
        prof = edge_degrees(Hypergraph(2, 2, ((0, 1), (0, 1))))
        assert prof.degrees == (1, 1)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4), st.integers(0, 12), st.integers(0, 10 ** 6))
    def test_matches_pairwise_count(self, n, m, seed):
        h = random_uniform(n, n + 4, m, seed)
        prof = edge_degrees(h)
        assert list(prof.degrees) == _degrees_by_pairs(h)
        assert all(0 <= d <= max(m - 1, 0) for d in prof.degrees)
        if len(set(h.edges)) == len(h.edges):
            assert sum(prof.degrees) % 2 == 0


class TestFormat:
    def test_read_triangle(self, tri):
        assert read_hg("hg 2 3 3\n0 1\n1 2\n0 2\n") == tri

    def test_write_triangle(self, tri):
        assert write_hg(tri) == "hg 2 3 3\n0 1\n1 2\n0 2\n"

    def test_edge_size_error(self):
        with pytest.raises(HypergraphFormatError, match="edge 0 has 3 vertices, expected 2") as exc:
            read_hg("hg 2 3 1\n0 1 2\n")
        assert exc.value.line == 2

    def test_bad_header(self):
        with pytest.raises(HypergraphFormatError, match="line 1"):
            read_hg("graph 2 3 1\n0 1\n")

    def test_edge_count_mismatch(self):
        with pytest.raises(HypergraphFormatError, match="declares 2 edges"):
            read_hg("hg 2 3 2\n0 1\n")

    def test_validation_after_parse(self):
        with pytest.raises(HypergraphFormatError, match="out of range"):
            read_hg("hg 2 3 1\n0 3\n")

    def test_non_integer(self):
        with pytest.raises(HypergraphFormatError, match="line 2"):
            read_hg("hg 2 3 1\n0 x\n")

    def test_edgeless(self):
        h = read_hg("hg 3 4 0\n")
        assert h.num_edges == 0 and write_hg(h) == "hg 3 4 0\n"

    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 5), st.integers(0, 20), st.integers(0, 2 ** 32 - 1))
    def test_round_trip(self, n, extra, m, seed):
        h = random_uniform(n, n + extra, m, seed)
        text = write_hg(h)
        assert read_hg(text) == h
        assert write_hg(read_hg(text)) == text
