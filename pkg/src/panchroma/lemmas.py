"""Numeric and combinatorial checks of the auxiliary inequalities used in the
analysis of the interval coloring.

* permutation-chain sums of pairwise intersection sizes versus the
  AM-GM bound ``((2 sum x + r) / r)^r``, with the bracket-selection
  injection behind it;
* the single-vertex overlap ratio bound ``exp(-s^2 / (20 r^2))``;
* the combined bound ``20^r r^(2r) e^(1-r)``;
* ``1 + 1/(r-1) > exp(1/r + 1/(2r^2))``.

Integer-valued sides are compared exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath

from .bounds import BoundError
from .coloring import compute_p

__all__ = [
    "IntersectionMatrix",
    "CheckResult",
    "perm_sum_bruteforce",
    "bracket_product",
    "injection_map",
    "selection_product",
    "lemma2_check",
    "lemma3_check",
    "lemma4_check",
    "corollary_inequality_check",
    "minimal_admissible_n",
    "MAX_BRUTE_R",
    "injectivity_check",
    "run_all_sweeps",
    "lemma3_grid",
]

MAX_BRUTE_R = 9


@dataclass(frozen=True)
class IntersectionMatrix:
    """Symmetric nonnegative integer matrix with zero diagonal;
    ``x[i][j] = |C_i & C_j|`` (0-based indices)."""

    x: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        x = tuple(tuple(int(v) for v in row) for row in self.x)
        r = len(x)
        for i, row in enumerate(x):
            if len(row) != r:
                raise ValueError("matrix must be square")
            if row[i] != 0:
                raise ValueError(f"diagonal entry {i} is {row[i]}, expected 0")
            for j, v in enumerate(row):
                if v < 0:
                    raise ValueError(f"negative entry at ({i}, {j})")
                if v != x[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "x", x)

    @classmethod
    def from_edges(cls, edges: Sequence[Iterable[int]]) -> "IntersectionMatrix":
        sets = [set(e) for e in edges]
        return cls(tuple(tuple(0 if i == j else len(a & b) for j, b in enumerate(sets))
                         for i, a in enumerate(sets)))

    @property
    def r(self) -> int:
        return len(self.x)

    def upper_sum(self) -> int:
        return sum(self.x[i][j] for i in range(self.r) for j in range(i + 1, self.r))


@dataclass(frozen=True)
class CheckResult:
    name: str
    params: dict
    lhs: object
    rhs: object
    ok: bool

    @property
    def margin(self) -> float:
        """``rhs - lhs`` for non-strict checks (positive means slack)."""
        return float(self.rhs) - float(self.lhs)


def _check_size(m: IntersectionMatrix) -> None:
    if m.r > MAX_BRUTE_R:
        raise ValueError(f"brute force limited to r <= {MAX_BRUTE_R}, got {m.r}")


def perm_sum_bruteforce(m: IntersectionMatrix) -> int:
    """Sum over all orderings of ``x[i1][i2] x[i2][i3] ... x[i_{r-1}][i_r]``."""
    _check_size(m)
    x = m.x
    total = 0
    for perm in itertools.permutations(range(m.r)):
        prod = 1
        for a, b in zip(perm, perm[1:]):
            prod *= x[a][b]
            if not prod:
                break
        total += prod
    return total


def bracket_product(m: IntersectionMatrix) -> int:
    """``prod_i (sum_{j != i} x[i][j] + 1)``: the middle term of the chain
    perm-sum <= bracket product <= AM-GM bound."""
    out = 1
    for row in m.x:
        out *= sum(row) + 1
    return out


def injection_map(chain: Sequence[int]) -> tuple[Optional[int], ...]:
    """Bracket selection for a chain ``(i_1, ..., i_r)`` of labels ``1..r``.

    Entry ``b - 1`` is the partner ``t`` such that bracket ``b`` contributes
    ``x[b][t]``, or ``None`` when it contributes the constant 1. Bracket
    ``i_k`` takes ``x[i_k][i_{k+1}]``; the last bracket ``i_r`` takes 1.
    """
    r = len(chain)
    if sorted(chain) != list(range(1, r + 1)):
        raise ValueError(f"not a permutation of 1..{r}: {tuple(chain)}")
    sel: list[Optional[int]] = [None] * r
    for a, b in zip(chain, chain[1:]):
        sel[a - 1] = b
    return tuple(sel)


def selection_product(m: IntersectionMatrix, selection: Sequence[Optional[int]]) -> int:
    """Value of the expanded bracket monomial picked by ``selection`` (1-based labels)."""
    out = 1
    for b, t in enumerate(selection):
        if t is not None:
            out *= m.x[b][t - 1]
    return out


def lemma2_check(m: IntersectionMatrix) -> CheckResult:
    """Permutation-chain sum against ``((2 sum_{i<j} x + r) / r)^r``, exactly."""
    r = m.r
    lhs = perm_sum_bruteforce(m)
    rhs = Fraction(2 * m.upper_sum() + r, r) ** r
    return CheckResult("lemma2", {"r": r, "pair_sum": m.upper_sum()}, lhs, rhs, lhs <= rhs)


def _overlap_ratio(r: int, p: float, s: int) -> float:
    return (1 - s * (1 - p) / r) / (1 - ((1 - p) / r + 2 * p / (r - 1))) ** s


def _check_regime(r: int, p: float) -> None:
    if not 0 < p < 1:
        raise BoundError(f"p must lie in (0, 1), got {p}")
    if not p * r < 0.01:
        raise BoundError(f"out of regime: requires p*r < 1/100, got p*r = {p * r:.6g}")


def lemma3_check(r: int, p: float, s: int) -> CheckResult:
    """Overlap ratio for one vertex in ``s`` edges versus ``exp(-s^2/(20 r^2))``."""
    if not 2 <= s <= r - 1:
        raise BoundError(f"s must lie in {{2, ..., r-1}}, got s={s}, r={r}")
    _check_regime(r, p)
    lhs = _overlap_ratio(r, p, s)
    rhs = math.exp(-s * s / (20 * r * r))
    return CheckResult("lemma3", {"r": r, "p": p, "s": s}, lhs, rhs, lhs <= rhs)


def lemma4_check(r: int, p: float, multiplicities: Sequence[int], m: IntersectionMatrix) -> CheckResult:
    """Overlap-ratio product times the permutation-chain sum versus
    ``20^r r^(2r) e^(1-r)``.

    ``multiplicities`` are the ``s(v) >= 2`` of one edge tuple and must be
    consistent with ``m`` by double counting.
    """
    if m.r != r:
        raise ValueError(f"matrix is {m.r}x{m.r}, expected r={r}")
    _check_size(m)
    _check_regime(r, p)
    for s in multiplicities:
        if not 2 <= s <= r:
            raise BoundError(f"multiplicity {s} outside [2, {r}]")
    if sum(s * (s - 1) // 2 for s in multiplicities) != m.upper_sum():
        raise ValueError("multiplicities inconsistent with the intersection matrix "
                         "(sum of C(s, 2) must equal the pairwise intersection total)")
    log_ratio = math.fsum(math.log(_overlap_ratio(r, p, s)) for s in multiplicities)
    perm = perm_sum_bruteforce(m)
    log_rhs = r * math.log(20) + 2 * r * math.log(r) - (r - 1)
    log_lhs = -math.inf if perm == 0 else log_ratio + math.log(perm)
    params = {"r": r, "p": p, "multiplicities": tuple(sorted(multiplicities))}
    return CheckResult("lemma4", params, math.exp(log_lhs), math.exp(log_rhs), log_lhs <= log_rhs)


def corollary_inequality_check(r: int) -> CheckResult:
    """``1 + 1/(r-1) > exp(1/r + 1/(2r^2))``; the gap is about ``1/(3r^3)``
    so it is evaluated at 60 significant digits."""
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    with mpmath.workdps(60):
        lhs = 1 + mpmath.mpf(1) / (r - 1)
        rhs = mpmath.exp(mpmath.mpf(1) / r + mpmath.mpf(1) / (2 * r * r))
        ok = bool(lhs > rhs)
        gap = float(lhs - rhs)
    return _StrictResult("corollary", {"r": r}, float(lhs), float(rhs), ok, gap)


@dataclass(frozen=True)
class _StrictResult(CheckResult):
    gap: float = 0.0

    @property
    def margin(self) -> float:
        """``lhs - rhs`` (the check is ``lhs > rhs``)."""
        return self.gap


def minimal_admissible_n(r: int) -> int:
    """Smallest integer n >= 3 with ``r <= (n / (100 ln n))^(1/3)``."""
    def fits(n: int) -> bool:
        return n / (100 * math.log(n)) >= r ** 3

    hi = 3
    while not fits(hi):
        hi *= 2
    lo = max(3, hi // 2)
    while lo < hi:
        mid = (lo + hi) // 2
        if fits(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def lemma3_grid(r_values: Iterable[int] = range(4, 31)) -> list[CheckResult]:
    out = []
    for r in r_values:
        p = compute_p(minimal_admissible_n(r), r)
        out.extend(lemma3_check(r, p, s) for s in range(2, r))
    return out


def injectivity_check(r: int) -> CheckResult:
    """All ``r!`` chains map to distinct bracket selections, none selecting a diagonal entry."""
    images = set()
    diagonal = False
    for chain in itertools.permutations(range(1, r + 1)):
        sel = injection_map(chain)
        diagonal |= any(t == b + 1 for b, t in enumerate(sel))
        images.add(sel)
    total = math.factorial(r)
    return CheckResult("injection", {"r": r}, len(images), total, len(images) == total and not diagonal)


def random_matrix(r: int, rng, high: int = 10) -> IntersectionMatrix:
    x = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            x[i][j] = x[j][i] = int(rng.integers(0, high + 1))
    return IntersectionMatrix(tuple(map(tuple, x)))


def random_edge_tuple(r: int, rng) -> list[tuple[int, ...]]:
    """``r`` random n-subsets of a small vertex set, so that overlaps are common."""
    n = int(rng.integers(2, 7))
    V = int(rng.integers(n, 3 * n + 1))
    return [tuple(sorted(rng.choice(V, size=n, replace=False).tolist())) for _ in range(r)]


def tuple_multiplicities(edges: Sequence[Iterable[int]]) -> list[int]:
    count: dict[int, int] = {}
    for e in edges:
        for v in set(e):
            count[v] = count.get(v, 0) + 1
    return sorted(c for c in count.values() if c >= 2)


def run_all_sweeps(seed: int = 0, matrices_per_r: int = 100, configs_per_r: int = 50,
                   corollary_points: int = 200) -> list[CheckResult]:
    """Every sweep behind ``verify-lemmas``, deterministic given ``seed``."""
    import numpy as np

    rng = np.random.default_rng(seed)
    out: list[CheckResult] = []
    for r in range(2, 7):
        out.extend(lemma2_check(random_matrix(r, rng)) for _ in range(matrices_per_r))
    out.extend(injectivity_check(r) for r in range(1, 6))
    out.extend(lemma3_grid(range(4, 31)))
    for r in range(2, 7):
        p = compute_p(minimal_admissible_n(r), r)
        for _ in range(configs_per_r):
            edges = random_edge_tuple(r, rng)
            out.append(lemma4_check(r, p, tuple_multiplicities(edges), IntersectionMatrix.from_edges(edges)))
    rs = sorted({int(round(x)) for x in np.geomspace(2, 10 ** 6, corollary_points)})
    out.extend(corollary_inequality_check(r) for r in rs)
    return out
