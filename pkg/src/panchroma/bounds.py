"""Log-space evaluation of the closed-form bounds around panchromatic
colorings, plus Local Lemma condition checkers.

Every quantity is carried as its natural logarithm: ``(r/(r-1))^n`` leaves
float range long before ``n`` is interesting. A bound equal to zero is
represented by ``log_value == -inf`` and rendered as ``"0"``.

Unspecified absolute constants (``c``, ``c1``, ``c2``) default to 1 and the
resulting :class:`LogBound` is flagged ``up_to_constant``.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from .coloring import compute_p

__all__ = [
    "Formula",
    "LogBound",
    "BoundError",
    "SnakeBallOverlap",
    "Theorem1Certificate",
    "Theorem2Condition",
    "eval_bound",
    "log_binomial",
    "logsumexp",
    "short_edge_expected_bound",
    "snake_ball_probability_bound",
    "snake_chain_bound",
    "theorem1_certificate",
    "theorem2_condition",
    "thm1_edge_threshold",
    "thm2_degree_threshold",
    "lll_general_check",
    "lll_quarter_check",
    "format_sci",
    "parse_sci",
]

NEG_INF = float("-inf")


class BoundError(ValueError):
    """Parameters outside a formula's stated range of applicability."""


class Formula(str, Enum):
    ERDOS_LOVASZ_1975 = "ERDOS_LOVASZ_1975"
    KOSTOCHKA_LOWER = "KOSTOCHKA_LOWER"
    KOSTOCHKA_UPPER = "KOSTOCHKA_UPPER"
    CUBE_ROOT_LOWER = "CUBE_ROOT_LOWER"
    ROZ_SHAB_LOWER = "ROZ_SHAB_LOWER"
    ROZ_SHAB_UPPER = "ROZ_SHAB_UPPER"
    ROZ_SHAB_LOCAL = "ROZ_SHAB_LOCAL"
    CHERKASHIN_LOWER = "CHERKASHIN_LOWER"
    THM1_LOWER = "THM1_LOWER"
    COROLLARY_LOWER = "COROLLARY_LOWER"
    THM2_LOCAL_LOWER = "THM2_LOCAL_LOWER"
    EL_LOCAL_DEGREE = "EL_LOCAL_DEGREE"
    SHORT_EDGE_EXPECTED = "SHORT_EDGE_EXPECTED"
    SNAKE_BALL_LEMMA1 = "SNAKE_BALL_LEMMA1"
    SNAKE_CHAIN_SECTION6 = "SNAKE_CHAIN_SECTION6"

    def __str__(self) -> str:
        return self.value


# ----------------------------------------------------------------------------
# scientific notation from a log value

_CTX = decimal.Context(prec=50)
_LN10 = _CTX.ln(decimal.Decimal(10))


def format_sci(log_value: float, digits: int = 3) -> str:
    """Render ``exp(log_value)`` as ``a.bcd e±NN`` without leaving log space."""
    if log_value == NEG_INF:
        return "0"
    if not math.isfinite(log_value):
        raise ValueError(f"cannot render {log_value}")
    lg10 = _CTX.divide(decimal.Decimal(log_value), _LN10)
    exp10 = int(lg10.to_integral_value(rounding=decimal.ROUND_FLOOR))
    mant = _CTX.power(decimal.Decimal(10), lg10 - exp10)
    text = f"{mant:.{digits}f}"
    if decimal.Decimal(text) >= 10:
        exp10 += 1
        text = f"{_CTX.divide(mant, 10):.{digits}f}"
    return f"{text}e{exp10:+03d}"


def parse_sci(text: str) -> float:
    """Natural log of a value written as ``a.bcde±NN`` (inverse of :func:`format_sci`)."""
    if text.strip() == "0":
        return NEG_INF
    mant, _, exp10 = text.strip().lower().partition("e")
    value = _CTX.ln(decimal.Decimal(mant)) + _CTX.multiply(decimal.Decimal(int(exp10 or 0)), _LN10)
    return float(value)


@dataclass(frozen=True)
class LogBound:
    formula: Formula
    params: Mapping[str, object]
    log_value: float
    up_to_constant: bool = False

    @property
    def is_zero(self) -> bool:
        return self.log_value == NEG_INF

    def value(self) -> float:
        """``exp(log_value)``; may overflow to ``inf`` for large bounds."""
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf

    def sci(self, digits: int = 3) -> str:
        return format_sci(self.log_value, digits)

    def extra_params(self) -> str:
        return ";".join(f"{k}={v}" for k, v in self.params.items() if k not in ("n", "r"))


# ----------------------------------------------------------------------------
# helpers


def logsumexp(values: Iterable[float]) -> float:
    values = list(values)
    top = max(values, default=NEG_INF)
    if top == NEG_INF:
        return NEG_INF
    return top + math.log(math.fsum(math.exp(v - top) for v in values))


def _log_count(count=None, log_count=None) -> float:
    if (count is None) == (log_count is None):
        raise TypeError("give exactly one of the count or its logarithm")
    if log_count is not None:
        return float(log_count)
    if count < 0:
        raise BoundError(f"count must be nonnegative, got {count}")
    return NEG_INF if count == 0 else math.log(count)


def log_binomial(log_m: float, r: int) -> float:
    """``ln C(m, r)`` for ``m = exp(log_m)``, real ``m`` allowed.

    Uses log-gamma while ``m`` fits in a float; beyond that ``ln C(m, r)``
    equals ``r ln m - ln r!`` to far below double precision.
    """
    if log_m == NEG_INF:
        return NEG_INF if r > 0 else 0.0
    if log_m < 700:
        m = math.exp(log_m)
        if m < r - 1e-9 * max(1.0, m):
            # C(m, r) = 0 for integer m < r; real m below r has no combinatorial meaning here
            return NEG_INF
        return math.lgamma(m + 1) - math.lgamma(r + 1) - math.lgamma(max(m - r, 0.0) + 1)
    return r * log_m - math.lgamma(r + 1)


def _log_int_binomial(m: int, r: int) -> float:
    if m < r:
        return NEG_INF
    if m < 2 ** 52:
        return math.lgamma(m + 1) - math.lgamma(r + 1) - math.lgamma(m - r + 1)
    return math.fsum(math.log(m - k) for k in range(r)) - math.lgamma(r + 1)


def _check_r(r: int, minimum: int = 2) -> None:
    if r < minimum:
        raise BoundError(f"r must be at least {minimum}, got {r}")


def _check_n(n: float) -> None:
    if n < 3:
        raise BoundError(f"n must be at least 3 (ln n > 1), got {n}")


def cube_root_limit(n: float) -> float:
    """Largest admissible r for the main theorems: ``(n / (100 ln n))^(1/3)``."""
    return (n / (100 * math.log(n))) ** (1 / 3)


def _check_cube_root(n: float, r: int, strict: bool = False) -> None:
    lhs = 3 * math.log(r)
    rhs = math.log(n) - math.log(100 * math.log(n))
    if lhs > rhs or (strict and lhs >= rhs):
        rel = "<" if strict else "<="
        raise BoundError(f"r exceeds (n/(100 ln n))^{{1/3}}: need r {rel} {cube_root_limit(n):.6g}")


def _log_ratio(r: int) -> float:
    """ln(r/(r-1))."""
    return -math.log1p(-1 / r)


# ----------------------------------------------------------------------------
# closed-form bounds


def _el(n, r, extra, check=True):
    _check_r(r)
    if n < 1:
        raise BoundError(f"n must be positive, got {n}")
    return (n - 1) * math.log(r) - math.log(4) - n * math.log(r - 1), False


def _kost_lower(n, r, extra, check=True):
    _check_r(r)
    c1 = extra.get("c1", 1.0)
    return c1 * n / r - math.log(r), "c1" not in extra


def _kost_upper(n, r, extra, check=True):
    _check_r(r)
    c2 = extra.get("c2", 1.0)
    return math.log(r) + c2 * n / r, "c2" not in extra


def _cube_root_lower(n, r, extra, check=True):
    _check_r(r)
    _check_n(n)
    if check and not r < n:
        raise BoundError(f"requires r < n, got r={r}, n={n}")
    const = (math.sqrt(21) - 3) / 4
    log_v = (math.log(const) - math.log(r)
             + (math.log(n) - 2 * math.log(r - 1) - math.log(math.log(n))) / 3
             + n * _log_ratio(r))
    return log_v, False


def _rs_lower(n, r, extra, check=True):
    _check_r(r)
    _check_n(n)
    if check and not r < n / (2 * math.log(n)):
        raise BoundError(f"requires r < n/(2 ln n) = {n / (2 * math.log(n)):.6g}")
    log_v = (-math.log(2 * r)
             + 0.5 * (math.log(n) - 2 * math.log(r) - math.log(math.log(n)))
             + n * _log_ratio(r))
    return log_v, False


def _rs_upper(n, r, extra, check=True):
    _check_r(r)
    _check_n(n)
    if check and not r < n / (2 * math.log(n)):
        raise BoundError(f"requires r < n/(2 ln n) = {n / (2 * math.log(n)):.6g}")
    c2 = extra.get("c2", 1.0)
    return math.log(c2) + 2 * math.log(n) + n * _log_ratio(r) + math.log(math.log(r)), "c2" not in extra


def _rs_local(n, r, extra, check=True):
    _check_r(r)
    _check_n(n)
    if check and not r <= n / (2 * math.log(n)):
        raise BoundError(f"requires r <= n/(2 ln n) = {n / (2 * math.log(n)):.6g}")
    const = (math.sqrt(11) - 3) / 4
    log_v = (math.log(const) - math.log(r)
             + 0.5 * (math.log(n) - 2 * math.log(r - 1) - math.log(math.log(n)))
             + n * _log_ratio(r))
    return log_v, False


def _cherkashin(n, r, extra, check=True):
    _check_r(r)
    _check_n(n)
    c = extra.get("c", 1.0)
    if check and not r <= c * n / math.log(n):
        raise BoundError(f"requires r <= c n/ln n = {c * n / math.log(n):.6g}")
    first = 0.25 * math.log(n) - 1.5 * math.log(r)
    second = -0.5 * math.log(n)
    return math.log(c) + max(first, second) + n * _log_ratio(r), "c" not in extra


def _thm1(n, r, extra, check=True):
    _check_r(r)
    _check_n(n)
    if check:
        _check_cube_root(n, r)
    log_v = (-math.log(20 * r * r)
             + (r - 1) / r * math.log(n / math.log(n))
             + n * _log_ratio(r))
    return log_v, False


def _corollary(n, r, extra, check=True):
    _check_r(r)
    if not n > 2:
        raise BoundError(f"requires n > 2, got {n}")
    if check and not math.log(n) < r:
        raise BoundError(f"requires ln n < r, got r={r}, ln n={math.log(n):.6g}")
    if check:
        _check_cube_root(n, r, strict=True)
    c = extra.get("c", 1.0)
    log_v = math.log(c) + math.log(n) - 2 * math.log(r) - math.log(math.log(n)) + n / r + n / (2 * r * r)
    return log_v, "c" not in extra


def _thm2(n, r, extra, check=True):
    _check_r(r)
    _check_n(n)
    if check:
        _check_cube_root(n, r, strict=True)
    log_v = (-math.log(40 * r ** 3)
             + (r - 1) / r * math.log(n / math.log(n))
             + n * _log_ratio(r))
    return log_v, False


_CLOSED_FORMS = {
    Formula.ERDOS_LOVASZ_1975: _el,
    Formula.EL_LOCAL_DEGREE: _el,
    Formula.KOSTOCHKA_LOWER: _kost_lower,
    Formula.KOSTOCHKA_UPPER: _kost_upper,
    Formula.CUBE_ROOT_LOWER: _cube_root_lower,
    Formula.ROZ_SHAB_LOWER: _rs_lower,
    Formula.ROZ_SHAB_UPPER: _rs_upper,
    Formula.ROZ_SHAB_LOCAL: _rs_local,
    Formula.CHERKASHIN_LOWER: _cherkashin,
    Formula.THM1_LOWER: _thm1,
    Formula.COROLLARY_LOWER: _corollary,
    Formula.THM2_LOCAL_LOWER: _thm2,
}


# which unspecified absolute constants each closed form carries
CONSTANTS = {
    Formula.KOSTOCHKA_LOWER: ("c1",),
    Formula.KOSTOCHKA_UPPER: ("c2",),
    Formula.ROZ_SHAB_UPPER: ("c2",),
    Formula.CHERKASHIN_LOWER: ("c",),
    Formula.COROLLARY_LOWER: ("c",),
}


def eval_bound(formula, n: float, r: int, check_range: bool = True, **extra) -> LogBound:
    """Evaluate one named bound at ``(n, r)``.

    ``check_range=False`` skips each theorem's applicability constraint
    (for example the cube-root limit on ``r``) and evaluates the closed
    form anyway; basic domain checks still apply.

    Closed forms take optional constants ``c``, ``c1``, ``c2``. The
    expected-count formulas take the keywords of their dedicated functions
    (``p``, ``num_edges``/``log_num_edges``, ``overlap``).
    """
    formula = Formula(formula)
    if formula is Formula.SHORT_EDGE_EXPECTED:
        return short_edge_expected_bound(n, r, **extra)
    if formula is Formula.SNAKE_BALL_LEMMA1:
        return snake_ball_probability_bound(n, r, **extra)
    if formula is Formula.SNAKE_CHAIN_SECTION6:
        return snake_chain_bound(n, r, **extra)
    unknown = set(extra) - set(CONSTANTS.get(formula, ()))
    if unknown:
        raise TypeError(f"{formula} does not take {sorted(unknown)}")
    log_v, flagged = _CLOSED_FORMS[formula](n, r, extra, check_range)
    params = {"n": n, "r": r, **extra}
    if not check_range:
        params["range_checked"] = False
    return LogBound(formula, params, log_v, up_to_constant=bool(flagged))


def thm1_edge_threshold(n: float, r: int) -> float:
    """ln of the edge count allowed by the main theorem."""
    return eval_bound(Formula.THM1_LOWER, n, r).log_value


def thm2_degree_threshold(n: float, r: int) -> float:
    """ln of ``(1/(40 r^3)) (n/ln n)^((r-1)/r) (r/(r-1))^n`` (no range check)."""
    _check_r(r)
    _check_n(n)
    return (-math.log(40 * r ** 3)
            + (r - 1) / r * math.log(n / math.log(n))
            + n * _log_ratio(r))


# ----------------------------------------------------------------------------
# expected-count bounds from the algorithm analysis


def _check_p(p: float) -> None:
    if not 0 < p < 1:
        raise BoundError(f"p must lie in (0, 1), got {p}")


def _log_short_per_edge(n: float, r: int, p: float) -> float:
    """ln of ``2(r-1)(1 - ((1-p)/r + p/(r-1)))^n``."""
    q = (1 - p) / r + p / (r - 1)
    return math.log(2 * (r - 1)) + n * math.log1p(-q)


def short_edge_expected_bound(n: float, r: int, p: float, num_edges=None, log_num_edges=None) -> LogBound:
    """Union bound on the expected number of short edges."""
    _check_r(r)
    _check_p(p)
    log_e = _log_count(num_edges, log_num_edges)
    log_v = NEG_INF if log_e == NEG_INF else log_e + _log_short_per_edge(n, r, p)
    params = {"n": n, "r": r, "p": p}
    params["num_edges" if num_edges is not None else "log_num_edges"] = (
        num_edges if num_edges is not None else log_num_edges)
    return LogBound(Formula.SHORT_EDGE_EXPECTED, params, log_v)


@dataclass(frozen=True)
class SnakeBallOverlap:
    """Overlap data of an ordered edge tuple ``(C_1, ..., C_r)``.

    ``multiplicities`` holds ``s(v)`` for every vertex lying in at least two
    of the edges; ``consecutive`` holds ``|C_i & C_{i+1}|``.
    """

    multiplicities: tuple[int, ...]
    consecutive: tuple[int, ...]
    pairwise: Optional[tuple[tuple[int, ...], ...]] = field(default=None, compare=False)

    @classmethod
    def from_edges(cls, edges: Sequence[Iterable[int]]) -> "SnakeBallOverlap":
        sets = [set(e) for e in edges]
        count: dict[int, int] = {}
        for s in sets:
            for v in s:
                count[v] = count.get(v, 0) + 1
        mult = tuple(sorted(c for c in count.values() if c >= 2))
        consecutive = tuple(len(sets[i] & sets[i + 1]) for i in range(len(sets) - 1))
        pairwise = tuple(tuple(0 if i == j else len(sets[i] & sets[j]) for j in range(len(sets)))
                         for i in range(len(sets)))
        return cls(mult, consecutive, pairwise)

    def pair_sum(self) -> int:
        """``sum_{i<j} |C_i & C_j|`` computed via ``sum C(s(v), 2)``."""
        return sum(s * (s - 1) // 2 for s in self.multiplicities)


def _log_overlap_ratio(s: int, r: int, p: float) -> float:
    """ln of ``(1 - s(1-p)/r) / (1 - ((1-p)/r + 2p/(r-1)))^s``."""
    num = 1 - s * (1 - p) / r
    den = 1 - ((1 - p) / r + 2 * p / (r - 1))
    if num <= 0 or den <= 0:
        raise BoundError(f"overlap factor nonpositive for s={s}, r={r}, p={p}")
    return math.log(num) - s * math.log(den)


def snake_ball_probability_bound(n: float, r: int, p: float, overlap: SnakeBallOverlap) -> LogBound:
    """Upper bound on P(the tuple forms a snake ball and none of its edges is short)."""
    _check_r(r)
    _check_p(p)
    if len(overlap.consecutive) != r - 1:
        raise BoundError(f"need {r - 1} consecutive intersections, got {len(overlap.consecutive)}")
    for s in overlap.multiplicities:
        if not 2 <= s <= r:
            raise BoundError(f"multiplicity s(v)={s} outside [2, {r}]")
    params = {"n": n, "r": r, "p": p, "exponent": "(n-2)r+2",
              "multiplicities": list(overlap.multiplicities), "consecutive": list(overlap.consecutive)}
    if min(overlap.consecutive, default=1) == 0:
        return LogBound(Formula.SNAKE_BALL_LEMMA1, params, NEG_INF)
    log_v = ((r - 1) * math.log(p / (r - 1))
             + ((n - 2) * r + 2) * -_log_ratio(r)
             + p * r / (r - 1) ** 2
             + math.fsum(_log_overlap_ratio(s, r, p) for s in overlap.multiplicities)
             + math.fsum(math.log(x) for x in overlap.consecutive))
    return LogBound(Formula.SNAKE_BALL_LEMMA1, params, log_v)


def snake_chain_bound(n: float, r: int, num_edges=None, log_num_edges=None) -> LogBound:
    """The expected snake-ball count chain with ``p`` from the default formula:

    ``C(|E|, r) ((r-1)^2 ln(n/ln n)/(r n))^(r-1) ((r-1)/r)^((n-2)r) 20^r r^(2r) / e^(r-1)``.
    """
    _check_r(r)
    _check_n(n)
    if num_edges is not None and isinstance(num_edges, int):
        log_c = _log_int_binomial(num_edges, r)
    else:
        log_c = log_binomial(_log_count(num_edges, log_num_edges), r)
    params = {"n": n, "r": r, "exponent": "(n-2)r"}
    params["num_edges" if num_edges is not None else "log_num_edges"] = (
        num_edges if num_edges is not None else log_num_edges)
    if log_c == NEG_INF:
        return LogBound(Formula.SNAKE_CHAIN_SECTION6, params, NEG_INF)
    log_v = (log_c
             + (r - 1) * math.log((r - 1) ** 2 * math.log(n / math.log(n)) / (r * n))
             - (n - 2) * r * _log_ratio(r)
             + r * math.log(20) + 2 * r * math.log(r) - (r - 1))
    return LogBound(Formula.SNAKE_CHAIN_SECTION6, params, log_v)


@dataclass(frozen=True)
class Theorem1Certificate:
    n: float
    r: int
    p: float
    short_bound: float
    short_expected: LogBound
    snake_bound: LogBound
    success_lower: float
    printed_snake_bound: float
    printed_success: float

    @property
    def short_chain_holds(self) -> bool:
        """The computed short-edge expectation is at most ``1/(10r)``."""
        return self.short_expected.value() <= self.short_bound

    @property
    def snake_chain_holds(self) -> bool:
        """The computed snake chain is at most ``(1/r)(r/(r-1))^2``."""
        return self.snake_bound.log_value <= math.log(self.printed_snake_bound)

    @property
    def positive(self) -> bool:
        return self.success_lower > 0


def theorem1_certificate(n: float, r: int, num_edges=None, log_num_edges=None) -> Theorem1Certificate:
    """Union-bound certificate that the coloring succeeds with positive probability.

    ``success_lower = 1 - 1/(10r) - snake_chain``. For ``r = 2`` the chain is
    close to ``(4/e) ln(n/ln n)/ln n`` and the certificate is negative; it
    is positive from ``r = 3`` on at admissible ``n``.
    """
    _check_r(r)
    _check_n(n)
    _check_cube_root(n, r)
    log_e = _log_count(num_edges, log_num_edges)
    limit = thm1_edge_threshold(n, r)
    if log_e > limit + 1e-12 * max(1.0, abs(limit)):
        raise BoundError(f"edge count exceeds the threshold exp({limit:.6f})")
    p = compute_p(n, r)
    short_bound = 1 / (10 * r)
    short_expected = short_edge_expected_bound(n, r, p, num_edges=num_edges, log_num_edges=log_num_edges)
    snake = snake_chain_bound(n, r, num_edges=num_edges, log_num_edges=log_num_edges)
    printed = (1 / r) * (r / (r - 1)) ** 2
    return Theorem1Certificate(
        n=n, r=r, p=p,
        short_bound=short_bound,
        short_expected=short_expected,
        snake_bound=snake,
        success_lower=1 - short_bound - snake.value(),
        printed_snake_bound=printed,
        printed_success=1 - short_bound - printed,
    )


@dataclass(frozen=True)
class Theorem2Condition:
    log_sum_snake: float
    log_sum_short: float

    @property
    def sum_for_snake_events(self) -> float:
        return math.exp(self.log_sum_snake) if self.log_sum_snake < 700 else math.inf

    @property
    def sum_for_short_events(self) -> float:
        return math.exp(self.log_sum_short) if self.log_sum_short < 700 else math.inf

    @property
    def ok(self) -> bool:
        quarter = math.log(0.25)
        return self.log_sum_snake < quarter and self.log_sum_short < quarter


def theorem2_condition(n: float, r: int, D=None, log_D=None) -> Theorem2Condition:
    """Neighbourhood probability sums for the two kinds of bad events
    (snake balls and short edges) given maximum edge degree ``D``."""
    _check_r(r)
    _check_n(n)
    log_d = _log_count(D, log_D)
    p = compute_p(n, r)
    log_d1 = logsumexp([log_d, 0.0])
    short = _log_short_per_edge(n, r, p)
    snake = (-(n - 2) * r * _log_ratio(r) + (r - 1) * math.log(p / (r - 1))
             + r * math.log(20) + 2 * r * math.log(r) - (r - 1))
    tail = (r - 1) * log_d
    s_w = logsumexp([math.log(r) + log_d1 + short, math.log(2 * r * r) + log_d1 + tail + snake])
    s_q = logsumexp([log_d1 + short, math.log(2 * r) + log_d1 + tail + snake])
    return Theorem2Condition(s_w, s_q)


# ----------------------------------------------------------------------------
# Local Lemma conditions


def _neighbours(adjacency, k: int) -> list[int]:
    if isinstance(adjacency, Mapping):
        return list(adjacency.get(k, ()))
    return list(adjacency[k])


def lll_general_check(probs: Sequence, adjacency, x: Sequence) -> tuple[bool, float]:
    """General Local Lemma: ``P[A_i] <= x_i prod_{(i,j)} (1 - x_j)`` for all i.

    ``adjacency[i]`` lists the out-neighbours of event ``i``. Returns
    ``(holds, prod(1 - x_i))``.
    """
    if len(probs) != len(x):
        raise ValueError(f"{len(probs)} probabilities but {len(x)} weights")
    if not isinstance(adjacency, Mapping) and len(adjacency) != len(probs):
        raise ValueError(f"adjacency has {len(adjacency)} rows for {len(probs)} events")
    for xi in x:
        if not 0 <= xi < 1:
            raise ValueError(f"weights must lie in [0, 1), got {xi}")
    holds = True
    for i, pi in enumerate(probs):
        rhs = x[i]
        for j in _neighbours(adjacency, i):
            if not 0 <= j < len(probs):
                raise ValueError(f"event {i} points at unknown event {j}")
            rhs *= 1 - x[j]
        if pi > rhs:
            holds = False
    lower = 1
    for xi in x:
        lower *= 1 - xi
    return holds, lower


def lll_quarter_check(probs: Sequence, adjacency) -> bool:
    """Every ``P[A_i] <= 1/2`` and every out-neighbourhood sum is ``<= 1/4``."""
    if any(pi > 0.5 for pi in probs):
        return False
    for i in range(len(probs)):
        if sum(probs[j] for j in _neighbours(adjacency, i)) > 0.25:
            return False
    return True
