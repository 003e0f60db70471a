"""Exact integer/rational combinatorics.

Everything in this module is computed in exact arithmetic
(``fractions.Fraction`` over Python big ints): Stirling numbers of both
kinds, the log-kernel coefficients p_n (the positive rationals generated
by 1/z + 1/ln(1-z)), Norlund numbers, Bernoulli numbers of the first and
second kind, complete Bell polynomials and generalized harmonic numbers.

There is no floating-point fallback here; the tables built below are the
source of truth for every exact check in the test suite.  Tables are
memoized bottom-up and are safe for concurrent reads once built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Literal, Sequence

__all__ = [
    "N_MAX",
    "stirling_first",
    "stirling_second",
    "factorial",
    "binomial",
    "p_stirling",
    "p_recursion",
    "p_norlund_bridge",
    "pn_table",
    "PnTable",
    "norlund",
    "norlund_direct",
    "bernoulli_classical",
    "bernoulli_from_p",
    "bernoulli_second_kind",
    "conjecture_scan",
    "ConjectureScan",
    "p_asymptotic",
    "harmonic_generalized",
    "bell_complete",
    "pochhammer_rational",
    "falling_factorial_rational",
]

#: Hard cap on table sizes.  p_n to n = N_MAX needs Stirling rows of that
#: order, which overflow any fixed-width integer; everything is big-int.
N_MAX = 2000

PnRoute = Literal["stirling_sum", "recursion", "norlund_bridge"]


# ---------------------------------------------------------------------------
# Stirling numbers
# ---------------------------------------------------------------------------

_s1_rows: list[list[int]] = [[1]]
_s2_rows: list[list[int]] = [[1]]


def _grow_s1(n: int) -> None:
    while len(_s1_rows) <= n:
        m = len(_s1_rows)
        prev = _s1_rows[m - 1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            # s(m, k) = s(m-1, k-1) - (m-1) * s(m-1, k)
            row[k] = prev[k - 1] - (m - 1) * (prev[k] if k < m else 0)
        _s1_rows.append(row)


def _grow_s2(n: int) -> None:
    while len(_s2_rows) <= n:
        m = len(_s2_rows)
        prev = _s2_rows[m - 1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            # S(m, k) = S(m-1, k-1) + k * S(m-1, k)
            row[k] = prev[k - 1] + k * (prev[k] if k < m else 0)
        _s2_rows.append(row)


def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind s(n, k); s(0, 0) = 1."""
    if n < 0 or k < 0 or k > n or n > N_MAX:
        raise ValueError(f"stirling_first: need 0 <= k <= n <= {N_MAX}, got ({n}, {k})")
    _grow_s1(n)
    return _s1_rows[n][k]


def stirling_second(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k); S(0, 0) = 1."""
    if n < 0 or k < 0 or k > n or n > N_MAX:
        raise ValueError(f"stirling_second: need 0 <= k <= n <= {N_MAX}, got ({n}, {k})")
    _grow_s2(n)
    return _s2_rows[n][k]


_fact_cache: list[int] = [1]


def factorial(n: int) -> int:
    """n! with a growing cache (the Stirling/p tables hit this heavily)."""
    if n < 0:
        raise ValueError("factorial: negative argument")
    while len(_fact_cache) <= n:
        _fact_cache.append(_fact_cache[-1] * len(_fact_cache))
    return _fact_cache[n]


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# The p_n family
# ---------------------------------------------------------------------------

def p_stirling(n: int) -> Fraction:
    """p_n from the signed Stirling sum.

    p_n = ((-1)^n / (n-1)!) * sum_{k=1}^{n-1} s(n-1, k) / (k+1), n >= 2.
    """
    if n < 2:
        raise ValueError("p_stirling: defined for n >= 2")
    m = n - 1
    _grow_s1(m)
    row = _s1_rows[m]
    total = Fraction(0)
    for k in range(1, m + 1):
        total += Fraction(row[k], k + 1)
    return Fraction((-1) ** n) * total / factorial(m)


_p_rec: list[Fraction] = [Fraction(1, 2)]  # _p_rec[i] == p_{i+2}


def _grow_p_rec(n: int) -> None:
    # p_{m+1} = 1/(m+1) - sum_{j=1}^{m-1} p_{j+1}/(m-j+1), seeded with p_2 = 1/2
    while len(_p_rec) < n - 1:
        m = len(_p_rec) + 1
        acc = Fraction(1, m + 1)
        for j in range(1, m):
            acc -= _p_rec[j - 1] / (m - j + 1)
        _p_rec.append(acc)


def p_recursion(n: int) -> Fraction:
    """p_n from the convolution recursion implied by multiplying the
    generating function 1/z + 1/ln(1-z) by ln(1-z)."""
    if n < 2:
        raise ValueError("p_recursion: defined for n >= 2")
    if n - 2 >= N_MAX:
        raise ValueError(f"p_recursion: n exceeds N_MAX={N_MAX}")
    _grow_p_rec(n)
    return _p_rec[n - 2]


def norlund_direct(n: int) -> Fraction:
    """Norlund number B_n^{(n)} = (-1)^n * integral_0^1 (x)_n dx.

    Expanding the rising factorial in signed Stirling numbers gives
    B_n^{(n)} = sum_k (-1)^k s(n, k) / (k+1).
    """
    if n < 0:
        raise ValueError("norlund_direct: n >= 0 required")
    _grow_s1(n)
    row = _s1_rows[n]
    return sum((Fraction((-1) ** k * row[k], k + 1) for k in range(0, n + 1)), Fraction(0))


def norlund(n: int) -> Fraction:
    """Norlund number B_n^{(n)} via the iterated p-sum
    B_n^{(n)} = (-1)^n n! (1 - sum_{k=0}^{n-1} p_{k+2})."""
    if n < 0:
        raise ValueError("norlund: n >= 0 required")
    acc = Fraction(1)
    for k in range(0, n):
        acc -= p_recursion(k + 2)
    return Fraction((-1) ** n) * factorial(n) * acc


def p_norlund_bridge(n: int) -> Fraction:
    """p_n from the two-term Norlund relation
    B_m^{(m)} + m B_{m-1}^{(m-1)} = (-1)^{m+1} m! p_{m+1} with m = n-1."""
    if n < 2:
        raise ValueError("p_norlund_bridge: defined for n >= 2")
    m = n - 1
    val = norlund_direct(m) + m * norlund_direct(m - 1)
    return Fraction((-1) ** (m + 1)) * val / factorial(m)


@dataclass(frozen=True)
class PnTable:
    """Memoized p_2 .. p_N with the route that produced it.

    The table starts at p_2: the sums that consume it never reference an
    index below 2, and all stored values are positive rationals.
    """

    route: PnRoute
    values: tuple[Fraction, ...]  # values[i] == p_{i+2}

    @property
    def n_max(self) -> int:
        return len(self.values) + 1

    def p(self, n: int) -> Fraction:
        if n < 2 or n > self.n_max:
            raise ValueError(f"PnTable: p_{n} outside table range 2..{self.n_max}")
        return self.values[n - 2]


def pn_table(n_max: int, route: PnRoute = "recursion") -> PnTable:
    """Build p_2 .. p_{n_max} by the requested route."""
    if n_max < 2 or n_max > N_MAX:
        raise ValueError(f"pn_table: need 2 <= n_max <= {N_MAX}")
    if route == "recursion":
        vals = tuple(p_recursion(n) for n in range(2, n_max + 1))
    elif route == "stirling_sum":
        vals = tuple(p_stirling(n) for n in range(2, n_max + 1))
    elif route == "norlund_bridge":
        vals = tuple(p_norlund_bridge(n) for n in range(2, n_max + 1))
    else:
        raise ValueError(f"pn_table: unknown route {route!r}")
    return PnTable(route=route, values=vals)


# ---------------------------------------------------------------------------
# Bernoulli numbers, both kinds
# ---------------------------------------------------------------------------

_bern_cache: list[Fraction] = [Fraction(1)]


def bernoulli_classical(n: int) -> Fraction:
    """Classical Bernoulli number B_n with the B_1 = -1/2 convention,
    from the binomial recurrence sum_{r=0}^{m} C(m+1, r) B_r = 0."""
    if n < 0:
        raise ValueError("bernoulli_classical: n >= 0 required")
    while len(_bern_cache) <= n:
        m = len(_bern_cache)
        acc = Fraction(0)
        for r in range(0, m):
            acc += binomial(m + 1, r) * _bern_cache[r]
        _bern_cache.append(-acc / (m + 1))
    return _bern_cache[n]


def bernoulli_from_p(n: int) -> Fraction:
    """B_n / n expressed through the p-family and Stirling numbers of the
    second kind:

    B_n/n = sum_{l=0}^{n-1} p_{l+2} sum_{k=l+1}^{n} (-1)^k (k-1)! S(n, k).
    """
    if n < 1:
        raise ValueError("bernoulli_from_p: n >= 1 required")
    _grow_s2(n)
    row = _s2_rows[n]
    # suffix sums of (-1)^k (k-1)! S(n,k) over k = l+1 .. n
    suffix = [Fraction(0)] * (n + 2)
    for k in range(n, 0, -1):
        suffix[k] = suffix[k + 1] + Fraction((-1) ** k * factorial(k - 1) * row[k])
    total = Fraction(0)
    for l in range(0, n):
        total += p_recursion(l + 2) * suffix[l + 1]
    return total


def bernoulli_second_kind(n: int) -> Fraction:
    """Bernoulli number of the second kind b_n = (-1)^{n-1} n! p_{n+1},
    with b_0 = 1."""
    if n < 0:
        raise ValueError("bernoulli_second_kind: n >= 0 required")
    if n == 0:
        return Fraction(1)
    return Fraction((-1) ** (n - 1)) * factorial(n) * p_recursion(n + 1)


# ---------------------------------------------------------------------------
# Inequality scan for the p-sequence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureScan:
    """Exact-arithmetic scan of the three conjectured p-sequence inequalities.

    ``difference_negative``: (n+1) p_{n+3} - n p_{n+2} < 0 for n >= 2
    ``convex``:              p_n < (p_{n+1} + p_{n-1})/2 for n >= 3
    ``log_convex``:          p_n^2 < p_{n-1} p_{n+1}     for n >= 3

    Each counterexample list holds the indices where the inequality fails
    (empty means the inequality held on the whole scanned range).
    """

    n_scanned: int
    difference_negative: bool
    convex: bool
    log_convex: bool
    counterexamples: dict[str, tuple[int, ...]] = field(default_factory=dict)


def conjecture_scan(n_top: int) -> ConjectureScan:
    """Scan the three inequalities with exact rationals up to n_top."""
    if n_top < 5:
        raise ValueError("conjecture_scan: n_top >= 5 required")
    _grow_p_rec(n_top + 3)
    p = p_recursion
    bad_diff = tuple(
        n for n in range(2, n_top + 1) if not (n + 1) * p(n + 3) - n * p(n + 2) < 0
    )
    bad_convex = tuple(
        n for n in range(3, n_top + 1) if not p(n) < (p(n + 1) + p(n - 1)) / 2
    )
    bad_logconvex = tuple(
        n for n in range(3, n_top + 1) if not p(n) ** 2 < p(n - 1) * p(n + 1)
    )
    return ConjectureScan(
        n_scanned=n_top,
        difference_negative=not bad_diff,
        convex=not bad_convex,
        log_convex=not bad_logconvex,
        counterexamples={
            "difference_negative": bad_diff,
            "convex": bad_convex,
            "log_convex": bad_logconvex,
        },
    )


def p_asymptotic(n: int):
    """Leading asymptotic model p_n ~ 1/(n (ln n + gamma)^2), as an mpf."""
    from mpmath import mp

    if n < 2:
        raise ValueError("p_asymptotic: n >= 2 required")
    ln_n = mp.log(n)
    return 1 / (n * (ln_n + mp.euler) ** 2)


# ---------------------------------------------------------------------------
# Harmonic numbers, Bell polynomials, Pochhammer helpers
# ---------------------------------------------------------------------------

def harmonic_generalized(n: int, r: int) -> Fraction:
    """Generalized harmonic number H_n^{(r)} = sum_{k<=n} k^{-r}, exact."""
    if n < 1 or r < 1:
        raise ValueError("harmonic_generalized: n >= 1 and r >= 1 required")
    return sum((Fraction(1, k**r) for k in range(1, n + 1)), Fraction(0))


def bell_complete(xs: Sequence) -> object:
    """Complete Bell polynomial Y_m(x_1, ..., x_m).

    Uses Y_m = sum_{j=0}^{m-1} C(m-1, j) Y_j x_{m-j}, Y_0 = 1.  Works over
    Fractions or mpf values alike; returns int 1 for the empty argument
    list (Y_0).
    """
    m = len(xs)
    Y: list = [1]
    for mm in range(1, m + 1):
        acc = 0
        for j in range(0, mm):
            acc += binomial(mm - 1, j) * Y[j] * xs[mm - 1 - j]
        Y.append(acc)
    return Y[m]


def pochhammer_rational(a: Fraction, n: int) -> Fraction:
    """Rising factorial (a)_n over exact rationals."""
    acc = Fraction(1)
    av = Fraction(a)
    for i in range(n):
        acc *= av + i
    return acc


def falling_factorial_rational(a: Fraction, n: int) -> Fraction:
    """Falling product a (a-1) ... (a-n+1) over exact rationals."""
    acc = Fraction(1)
    av = Fraction(a)
    for i in range(n):
        acc *= av - i
    return acc
