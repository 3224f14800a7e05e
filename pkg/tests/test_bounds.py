import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from panchroma.bounds import (
    BoundError,
    Formula,
    SnakeBallOverlap,
    eval_bound,
    format_sci,
    lll_general_check,
    lll_quarter_check,
    parse_sci,
    short_edge_expected_bound,
    snake_ball_probability_bound,
    snake_chain_bound,
    theorem1_certificate,
    theorem2_condition,
    thm1_edge_threshold,
    thm2_degree_threshold,
)
from panchroma.coloring import compute_p
from panchroma.lemmas import minimal_admissible_n


# plain floating products, no logs: an independent route to each value
def _direct(formula, n, r, c=1.0):
    q = (r / (r - 1)) ** n
    ln = math.log(n)
    return {
        Formula.ERDOS_LOVASZ_1975: r ** (n - 1) / (4 * (r - 1) ** n),
        Formula.EL_LOCAL_DEGREE: r ** (n - 1) / (4 * (r - 1) ** n),
        Formula.KOSTOCHKA_LOWER: math.exp(c * n / r) / r,
        Formula.KOSTOCHKA_UPPER: r * math.exp(c * n / r),
        Formula.CUBE_ROOT_LOWER: (math.sqrt(21) - 3) / 4 / r * (n / ((r - 1) ** 2 * ln)) ** (1 / 3) * q,
        Formula.ROZ_SHAB_LOWER: 1 / (2 * r) * math.sqrt(n / (r * r * ln)) * q,
        Formula.ROZ_SHAB_UPPER: c * n * n * q * math.log(r),
        Formula.ROZ_SHAB_LOCAL: (math.sqrt(11) - 3) / 4 / r * math.sqrt(n / ((r - 1) ** 2 * ln)) * q,
        Formula.CHERKASHIN_LOWER: c * max(n ** 0.25 / r ** 1.5, 1 / math.sqrt(n)) * q,
    }[formula]


SMALL_N = [Formula.ERDOS_LOVASZ_1975, Formula.EL_LOCAL_DEGREE, Formula.KOSTOCHKA_LOWER,
           Formula.KOSTOCHKA_UPPER, Formula.CUBE_ROOT_LOWER, Formula.ROZ_SHAB_LOWER,
           Formula.ROZ_SHAB_UPPER, Formula.ROZ_SHAB_LOCAL, Formula.CHERKASHIN_LOWER]


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(SMALL_N), st.integers(3, 400), st.integers(2, 8),
       st.floats(0.25, 3.0))
def test_log_value_matches_direct_product(formula, n, r, c):
    extra = {k: c for k in __import__("panchroma").bounds.CONSTANTS.get(formula, ())}
    try:
        b = eval_bound(formula, n, r, **extra)
    except BoundError:
        assume(False)
    direct = _direct(formula, n, r, c)
    assume(0 < direct < 1e300)
    assert math.isclose(b.value(), direct, rel_tol=1e-9)


def _mp_thm(n, r, denom):
    with mpmath.workdps(40):
        n = mpmath.mpf(n)
        return mpmath.log((n / mpmath.log(n)) ** (mpmath.mpf(r - 1) / r) * (mpmath.mpf(r) / (r - 1)) ** n / denom)


@pytest.mark.parametrize("n,r", [(8000, 2), (28000, 3), (10 ** 6, 4), (10 ** 9, 10)])
def test_theorem_bounds_against_mpmath(n, r):
    b1 = eval_bound(Formula.THM1_LOWER, n, r)
    assert math.isclose(b1.log_value, float(_mp_thm(n, r, 20 * r * r)), rel_tol=1e-12)
    if r >= 3 or n > 8000:
        b2 = eval_bound(Formula.THM2_LOCAL_LOWER, n, r)
        assert math.isclose(b2.log_value, float(_mp_thm(n, r, 40 * r ** 3)), rel_tol=1e-12)


def test_corollary_against_mpmath():
    n, r = 10 ** 9, 30
    b = eval_bound(Formula.COROLLARY_LOWER, n, r, c=0.5)
    with mpmath.workdps(40):
        want = mpmath.log(mpmath.mpf(0.5) * n / (r * r * mpmath.log(n)) * mpmath.e ** (mpmath.mpf(n) / r + mpmath.mpf(n) / (2 * r * r)))
    assert math.isclose(b.log_value, float(want), rel_tol=1e-12)
    assert not b.up_to_constant
    assert eval_bound(Formula.COROLLARY_LOWER, n, r).up_to_constant


class TestExamples:
    def test_el_local_degree(self):
        b = eval_bound(Formula.EL_LOCAL_DEGREE, 3, 2)
        assert b.log_value == 0.0 and b.value() == 1.0

    def test_thm1_8000(self):
        b = eval_bound(Formula.THM1_LOWER, 8000, 2)
        want = math.log(1 / 80) + 0.5 * math.log(8000 / math.log(8000)) + 8000 * math.log(2)
        assert abs(b.log_value - 5544.19) < 0.01
        assert math.isclose(b.log_value, want, rel_tol=1e-14)

    def test_thm1_out_of_range(self):
        with pytest.raises(BoundError, match=r"r exceeds \(n/\(100 ln n\)\)\^\{1/3\}"):
            eval_bound(Formula.THM1_LOWER, 100, 5)

    def test_rs_lower_range(self):
        with pytest.raises(BoundError, match="n/\\(2 ln n\\)"):
            eval_bound(Formula.ROZ_SHAB_LOWER, 10, 5)

    def test_constants_flagged(self):
        assert eval_bound(Formula.KOSTOCHKA_LOWER, 50, 3).up_to_constant
        assert not eval_bound(Formula.KOSTOCHKA_LOWER, 50, 3, c1=2.0).up_to_constant
        with pytest.raises(TypeError):
            eval_bound(Formula.THM1_LOWER, 8000, 2, c=1.0)

    def test_large_n_stays_finite(self):
        b = eval_bound(Formula.THM1_LOWER, 10 ** 9, 5)
        assert math.isfinite(b.log_value) and b.value() == math.inf
        assert b.sci().endswith(f"e+{int(b.log_value / math.log(10))}")


def test_thm1_monotone_in_n():
    logs = [eval_bound(Formula.THM1_LOWER, n, 2, check_range=False).log_value
            for n in range(4000, 40001, 500)]
    assert all(a < b for a, b in zip(logs, logs[1:]))


def test_range_check_opt_out():
    b = eval_bound(Formula.THM1_LOWER, 4000, 2, check_range=False)
    assert b.params["range_checked"] is False
    with pytest.raises(BoundError):
        eval_bound(Formula.THM1_LOWER, 4000, 2)


class TestSci:
    def test_format(self):
        assert format_sci(math.log(1234.0)) == "1.234e+03"
        assert format_sci(math.log(0.00567)) == "5.670e-03"
        assert format_sci(0.0) == "1.000e+00"
        assert format_sci(float("-inf")) == "0"
        assert parse_sci("0") == float("-inf")

    def test_rounding_carry(self):
        assert format_sci(math.log(9.9999999)) == "1.000e+01"

    @settings(max_examples=300, deadline=None)
    @given(st.floats(-1e5, 1e7, allow_nan=False))
    def test_round_trip(self, log_value):
        back = parse_sci(format_sci(log_value, digits=17))
        assert abs(back - log_value) <= 1e-12 * max(1.0, abs(log_value))


class TestShortEdge:
    def test_p_to_zero(self):
        b = short_edge_expected_bound(3, 2, 1e-15, num_edges=1)
        assert math.isclose(b.value(), 0.25, rel_tol=1e-12)

    def test_direct(self):
        n, r, p, m = 7, 3, 0.2, 11
        want = 2 * (r - 1) * m * (1 - ((1 - p) / r + p / (r - 1))) ** n
        assert math.isclose(short_edge_expected_bound(n, r, p, num_edges=m).value(), want, rel_tol=1e-12)

    def test_no_edges(self):
        b = short_edge_expected_bound(5, 2, 0.2, num_edges=0)
        assert b.is_zero and b.sci() == "0"

    def test_theorem1_chain(self):
        n, r = 8000, 2
        b = short_edge_expected_bound(n, r, compute_p(n, r), log_num_edges=thm1_edge_threshold(n, r))
        assert b.value() <= 1 / (10 * r)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.1])
    def test_bad_p(self, p):
        with pytest.raises(BoundError):
            short_edge_expected_bound(5, 2, p, num_edges=1)


class TestSnakeBall:
    def test_disjoint_example(self):
        ov = SnakeBallOverlap((), (1,))
        b = snake_ball_probability_bound(4, 2, 0.1, ov)
        assert math.isclose(b.log_value, math.log(0.1 * 0.5 ** 6 * math.exp(0.2)), rel_tol=1e-12)
        assert b.params["exponent"] == "(n-2)r+2"

    def test_zero_consecutive(self):
        b = snake_ball_probability_bound(4, 3, 0.1, SnakeBallOverlap((), (1, 0)))
        assert b.is_zero

    def test_direct_with_overlap(self):
        n, r, p = 5, 3, 0.05
        ov = SnakeBallOverlap.from_edges([(0, 1, 2, 3, 4), (4, 5, 6, 7, 8), (8, 9, 10, 11, 4)])
        assert ov.multiplicities == (2, 3) and ov.consecutive == (1, 2)
        den = 1 - ((1 - p) / r + 2 * p / (r - 1))
        factor = 1.0
        for s in (2, 3):
            factor *= (1 - s * (1 - p) / r) / den ** s
        want = ((p / (r - 1)) ** (r - 1) * ((r - 1) / r) ** ((n - 2) * r + 2)
                * math.exp(p * r / (r - 1) ** 2) * factor * 1 * 2)
        assert math.isclose(snake_ball_probability_bound(n, r, p, ov).value(), want, rel_tol=1e-12)

    def test_multiplicity_out_of_range(self):
        with pytest.raises(BoundError, match="outside"):
            snake_ball_probability_bound(4, 2, 0.1, SnakeBallOverlap((3,), (1,)))

    def test_nonpositive_factor(self):
        # r=2: the denominator 1 - ((1-p)/2 + 2p) = (1 - 3p)/2 vanishes at p = 1/3
        with pytest.raises(BoundError, match="nonpositive"):
            snake_ball_probability_bound(4, 2, 0.5, SnakeBallOverlap((2,), (1,)))

    def test_double_counting(self):
        edges = [(0, 1, 2), (2, 3, 4), (0, 2, 4), (5, 6, 0)]
        ov = SnakeBallOverlap.from_edges(edges)
        direct = sum(len(set(edges[i]) & set(edges[j])) for i in range(4) for j in range(i + 1, 4))
        assert ov.pair_sum() == direct


class TestCertificate:
    def test_r2_chain_is_too_large(self):
        n = 8000
        cert = theorem1_certificate(n, 2, log_num_edges=thm1_edge_threshold(n, 2))
        assert cert.short_chain_holds and cert.snake_chain_holds
        assert cert.printed_success == pytest.approx(1 - 1 / 20 - 2)
        # the chain stays near (4/e) ln(n/ln n)/ln n, which exceeds 1 - 1/20 at r = 2
        approx = 4 / math.e * math.log(n / math.log(n)) / math.log(n)
        assert cert.snake_bound.value() == pytest.approx(approx, rel=0.05)
        assert not cert.positive

    def test_r3_positive(self):
        n = minimal_admissible_n(3)
        cert = theorem1_certificate(n, 3, log_num_edges=thm1_edge_threshold(n, 3))
        assert cert.positive and cert.short_chain_holds

    def test_single_edge(self):
        cert = theorem1_certificate(8000, 2, num_edges=1)
        assert cert.snake_bound.is_zero
        assert cert.success_lower == pytest.approx(1 - 1 / 20)

    def test_preconditions(self):
        with pytest.raises(BoundError, match="exceeds"):
            theorem1_certificate(100, 5, num_edges=1)
        with pytest.raises(BoundError, match="threshold"):
            theorem1_certificate(8000, 2, log_num_edges=thm1_edge_threshold(8000, 2) + 1)

    def test_chain_exponent_recorded(self):
        assert snake_chain_bound(8000, 2, num_edges=10).params["exponent"] == "(n-2)r"


class TestTheorem2:
    def test_threshold_and_ten_times(self):
        n, r = 8000, 4
        log_d = thm2_degree_threshold(n, r)
        assert theorem2_condition(n, r, log_D=log_d).ok
        assert not theorem2_condition(n, r, log_D=log_d + math.log(10)).ok

    def test_zero_degree(self):
        c = theorem2_condition(8000, 4, D=0)
        assert c.ok
        p = compute_p(8000, 4)
        short = 2 * 3 * (1 - ((1 - p) / 4 + p / 3)) ** 8000
        assert c.sum_for_short_events == pytest.approx(short, rel=1e-9)
        assert c.sum_for_snake_events == pytest.approx(4 * short, rel=1e-9)

    def test_monotone_in_degree(self):
        base = thm2_degree_threshold(8000, 4)
        conds = [theorem2_condition(8000, 4, log_D=base + k) for k in range(-20, 5)]
        assert all(a.log_sum_snake < b.log_sum_snake and a.log_sum_short < b.log_sum_short
                   for a, b in zip(conds, conds[1:]))

    def test_bad_r(self):
        with pytest.raises(BoundError):
            theorem2_condition(8000, 1, D=3)


class TestLocalLemma:
    def test_symmetric_regular(self):
        d = 3
        adj = [[(i + k) % 4 for k in (1, 2, 3)] for i in range(4)]
        ok, lower = lll_general_check([1 / (math.e * (d + 1))] * 4, adj, [1 / (d + 1)] * 4)
        assert ok and lower == pytest.approx(0.75 ** 4)

    def test_zero_probability(self):
        assert lll_general_check([0.0], [[]], [0.0])[0]

    def test_zero_weight_positive_probability(self):
        assert not lll_general_check([0.1, 0.1], [[1], [0]], [0.0, 0.5])[0]

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            lll_general_check([0.1], [[]], [0.1, 0.2])

    def test_quarter_boundary(self):
        adj = {i: [(i + 1) % 5, (i + 4) % 5] for i in range(5)}
        assert lll_quarter_check([1 / 8] * 5, adj)
        assert not lll_quarter_check([1 / 8 + 1e-12] * 5, adj)

    def test_quarter_large_probability(self):
        assert not lll_quarter_check([0.6, 0.1], [[], []])

    def test_quarter_empty_adjacency(self):
        assert lll_quarter_check([0.5, 0.3], [[], []])

    def test_exact_fractions(self):
        assert lll_quarter_check([Fraction(1, 8)] * 3, [[1, 2], [0, 2], [0, 1]])
