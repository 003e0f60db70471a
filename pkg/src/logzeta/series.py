"""Truncated formal Laurent series over exact rationals.

The engine exists to reproduce, exactly, every coefficient identity of
the generating-function family built on

    f(z) = 1/z + 1/ln(1-z) = sum_{n>=0} p_{n+2} z^n,

its powers, and the pole structure of 1/ln^k(1-z).  A series knows its
lowest exponent (which may be negative) and the truncation order through
which every stored coefficient is exact.  Multiplication tracks the
largest exponent that remains exact when two truncated factors are
combined, so identity checks can never silently compare garbage tails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .rational import binomial, p_recursion

__all__ = [
    "TruncatedSeries",
    "base_series",
    "inv_log_power",
    "sum_power",
    "geometric_series",
    "log_series",
    "convolution_recurrence_residuals",
    "derivative_identity_residuals",
    "inv_log_display_residuals",
    "power_display_residuals",
    "assembly_residuals",
    "lngamma_weight",
    "lngamma2_weight",
    "lngamma2_weight_printed",
    "glaisher_weight_printed",
    "glaisher_integrand_series",
    "parts_bracket",
    "parts_bracket_printed_coeffs",
]


@dataclass(frozen=True)
class TruncatedSeries:
    """Laurent series sum_{k=m_min}^{order} c_k z^k, exact through z^order."""

    m_min: int
    order: int
    coeffs: tuple[Fraction, ...]  # coeffs[i] is the z^{m_min + i} coefficient

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.order - self.m_min + 1:
            raise ValueError("TruncatedSeries: coefficient count does not match range")

    # -- access ------------------------------------------------------------

    def c(self, k: int) -> Fraction:
        """Coefficient of z^k.  Exact zero below m_min; above the
        truncation order the value is unknown and raises."""
        if k > self.order:
            raise IndexError(f"coefficient z^{k} beyond truncation order {self.order}")
        if k < self.m_min:
            return Fraction(0)
        return self.coeffs[k - self.m_min]

    def pole_coeffs(self) -> dict[int, Fraction]:
        """All stored coefficients with negative exponent."""
        return {k: self.c(k) for k in range(self.m_min, 0) if k < 0}

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def from_dict(d: dict[int, Fraction], order: int) -> "TruncatedSeries":
        m_min = min(list(d.keys()) + [0])
        coeffs = tuple(Fraction(d.get(k, 0)) for k in range(m_min, order + 1))
        return TruncatedSeries(m_min, order, coeffs)

    @staticmethod
    def monomial(coeff, k: int, order: int) -> "TruncatedSeries":
        return TruncatedSeries.from_dict({k: Fraction(coeff)}, order)

    def _aligned(self, other: "TruncatedSeries") -> tuple[int, int]:
        return min(self.m_min, other.m_min), min(self.order, other.order)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m, top = self._aligned(other)
        return TruncatedSeries(m, top, tuple(self.c(k) + other.c(k) for k in range(m, top + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m, top = self._aligned(other)
        return TruncatedSeries(m, top, tuple(self.c(k) - other.c(k) for k in range(m, top + 1)))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.m_min, self.order, tuple(-a for a in self.coeffs))

    def scale(self, factor) -> "TruncatedSeries":
        f = Fraction(factor)
        return TruncatedSeries(self.m_min, self.order, tuple(f * a for a in self.coeffs))

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by z^k (k may be negative)."""
        return TruncatedSeries(self.m_min + k, self.order + k, self.coeffs)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        # exact through min(order_a + m_min_b, order_b + m_min_a)
        m = self.m_min + other.m_min
        top = min(self.order + other.m_min, other.order + self.m_min)
        out = []
        for k in range(m, top + 1):
            acc = Fraction(0)
            lo = max(self.m_min, k - other.order)
            hi = min(self.order, k - other.m_min)
            for i in range(lo, hi + 1):
                ai = self.coeffs[i - self.m_min]
                if ai:
                    acc += ai * other.coeffs[k - i - other.m_min]
            out.append(acc)
        return TruncatedSeries(m, top, tuple(out))

    def invert(self) -> "TruncatedSeries":
        """Reciprocal series; the lowest stored coefficient must be nonzero."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroDivisionError("invert: lowest coefficient vanishes")
        n = self.order - self.m_min
        a0 = self.coeffs[0]
        inv = [1 / a0] + [Fraction(0)] * n
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * inv[k - j]
            inv[k] = -acc / a0
        return TruncatedSeries(-self.m_min, n - self.m_min, tuple(inv))

    def differentiate(self) -> "TruncatedSeries":
        out = {}
        for k in range(self.m_min, self.order + 1):
            if k != 0:
                out[k - 1] = k * self.c(k)
        return TruncatedSeries.from_dict(out, self.order - 1)

    def power(self, k: int) -> "TruncatedSeries":
        if k < 0:
            raise ValueError("power: nonnegative exponent only")
        acc = TruncatedSeries.monomial(1, 0, self.order - self.m_min + max(self.m_min, 0))
        acc = TruncatedSeries.monomial(1, 0, self.order)
        for _ in range(k):
            acc = acc * self
        return acc

    def eval_mpf(self, z, terms: int | None = None):
        """Evaluate the truncated series at an mpf point (Horner on the
        stored range; used by the stabilized integrands)."""
        top = self.order if terms is None else min(self.order, self.m_min + terms - 1)
        acc = 0
        for k in range(top, self.m_min - 1, -1):
            acc = acc * z + self.c(k)
        if self.m_min:
            acc = acc * z**self.m_min
        return acc

    def to_json(self) -> str:
        payload = {
            "m_min": self.m_min,
            "N": self.order,
            "coeffs": [f"{a.numerator}/{a.denominator}" for a in self.coeffs],
        }
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "TruncatedSeries":
        payload = json.loads(text)
        coeffs = tuple(Fraction(s) for s in payload["coeffs"])
        return TruncatedSeries(payload["m_min"], payload["N"], coeffs)


# ---------------------------------------------------------------------------
# The generating-function family
# ---------------------------------------------------------------------------

def log_series(order: int) -> TruncatedSeries:
    """ln(1-z) through z^order."""
    return TruncatedSeries.from_dict(
        {k: Fraction(-1, k) for k in range(1, order + 1)}, order
    )


def geometric_series(order: int) -> TruncatedSeries:
    """1/(1-z) through z^order."""
    return TruncatedSeries(0, order, tuple(Fraction(1) for _ in range(order + 1)))


def base_series(order: int) -> TruncatedSeries:
    """Coefficients of 1/z + 1/ln(1-z) = sum_{n>=0} p_{n+2} z^n.

    Computed independently of the p-tables: expand -ln(1-z)/z, invert by
    triangular solve, negate and add back the pole.  The 1/z pole cancels,
    so the result is an ordinary power series starting at z^0.
    """
    if order < 0:
        raise ValueError("base_series: order >= 0 required")
    n = order + 1
    g = [Fraction(1, k + 1) for k in range(n + 1)]  # -ln(1-z)/z
    h = [Fraction(1)] + [Fraction(0)] * n           # 1/g
    for m in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, m + 1):
            acc += g[j] * h[m - j]
        h[m] = -acc
    # 1/ln(1-z) = -h/z ; adding 1/z leaves (1 - h(z))/z
    coeffs = tuple(-h[j + 1] for j in range(order + 1))
    return TruncatedSeries(0, order, coeffs)


def inv_log_power(k: int, order: int) -> TruncatedSeries:
    """Series of 1/ln^k(1-z), pole part through z^{-k} included."""
    if k < 1:
        raise ValueError("inv_log_power: k >= 1 required")
    base = base_series(order + k)
    inv_log = base - TruncatedSeries.monomial(1, -1, base.order)  # 1/ln(1-z)
    return inv_log.power(k)


def sum_power(k: int, order: int) -> TruncatedSeries:
    """Series of (1/ln(1-z) + 1/z)^k; pole-free by construction."""
    if k < 1:
        raise ValueError("sum_power: k >= 1 required")
    return base_series(order).power(k)


# ---------------------------------------------------------------------------
# Exact identity residuals used by the verification registry
# ---------------------------------------------------------------------------

def convolution_recurrence_residuals(n_top: int) -> dict[int, Fraction]:
    """Residuals of the square-coefficient convolution identity

        (n+3) p_{n+3} - n p_{n+2} = sum_{k=1}^{n+1} p_{k+1} p_{n-k+3}

    for 1 <= n <= n_top.  All-zero means the identity holds exactly."""
    res = {}
    for n in range(1, n_top + 1):
        lhs = (n + 3) * p_recursion(n + 3) - n * p_recursion(n + 2)
        rhs = sum(
            (p_recursion(k + 1) * p_recursion(n - k + 3) for k in range(1, n + 2)),
            Fraction(0),
        )
        res[n] = lhs - rhs
    return res


def derivative_identity_residuals(order: int) -> dict[int, Fraction]:
    """Coefficientwise residuals of

        sum_{n>=2} (n-1) p_{n+1} z^{n-2} = -1/z^2 + 1/((1-z) ln^2(1-z)).

    Returns residuals for exponents -2 .. order."""
    rhs = inv_log_power(2, order + 2) * geometric_series(order + 2)
    rhs = rhs - TruncatedSeries.monomial(1, -2, rhs.order)
    res = {}
    for k in range(-2, order + 1):
        lhs = Fraction(0)
        if k >= 0:
            n = k + 2
            lhs = (n - 1) * p_recursion(n + 1)
        res[k] = rhs.c(k) - lhs
    return res


# coefficient brackets of the displayed 1/ln^k(1-z) expansions, k = 2..5;
# each entry: (prefactor, bracket(n), {pole/constant coefficients})
def _bracket2(n: int) -> Fraction:
    return Fraction((n + 1)) * p_recursion(n + 3) - n * p_recursion(n + 2)


def _bracket3(n: int) -> Fraction:
    return (
        Fraction((n + 1) * (n + 2)) * p_recursion(n + 4)
        - Fraction((n + 1) * (2 * n + 1)) * p_recursion(n + 3)
        + Fraction(n * n) * p_recursion(n + 2)
    )


def _bracket4(n: int) -> Fraction:
    return (
        Fraction((n + 1) * (n + 2) * (n + 3)) * p_recursion(n + 5)
        - Fraction(3 * (n + 1) ** 2 * (n + 2)) * p_recursion(n + 4)
        + Fraction((n + 1) * (3 * n * n + 3 * n + 1)) * p_recursion(n + 3)
        - Fraction(n**3) * p_recursion(n + 2)
    )


def _bracket5(n: int) -> Fraction:
    return (
        Fraction((n + 1) * (n + 2) * (n + 3) * (n + 4)) * p_recursion(n + 6)
        - Fraction(2 * (n + 1) * (n + 2) * (n + 3) * (2 * n + 3)) * p_recursion(n + 5)
        + Fraction((n + 1) * (n + 2) * (6 * n * n + 12 * n + 7)) * p_recursion(n + 4)
        - Fraction((n + 1) * (2 * n + 1) * (2 * n * n + 2 * n + 1)) * p_recursion(n + 3)
        + Fraction(n**4) * p_recursion(n + 2)
    )


INV_LOG_DISPLAYS: dict[int, tuple[Fraction, Callable[[int], Fraction], dict[int, Fraction]]] = {
    2: (Fraction(1), _bracket2,
        {-2: Fraction(1), -1: Fraction(-1), 0: Fraction(1, 12)}),
    3: (Fraction(1, 2), _bracket3,
        {-3: Fraction(-1), -2: Fraction(3, 2), -1: Fraction(-1, 2), 0: Fraction(0)}),
    4: (Fraction(1, 6), _bracket4,
        {-4: Fraction(1), -3: Fraction(-2), -2: Fraction(7, 6), -1: Fraction(-1, 6),
         0: Fraction(-1, 720)}),
    5: (Fraction(1, 24), _bracket5,
        {-5: Fraction(-1), -4: Fraction(5, 2), -3: Fraction(-25, 12), -2: Fraction(5, 8),
         -1: Fraction(-1, 24), 0: Fraction(0)}),
}


def inv_log_display_residuals(k: int, n_top: int) -> dict[int, Fraction]:
    """Residuals of the displayed p-coefficient expansion of 1/ln^k(1-z)
    against the series engine, exponents -k .. n_top."""
    if k not in INV_LOG_DISPLAYS:
        raise ValueError("inv_log_display_residuals: k in 2..5 only")
    pref, bracket, fixed = INV_LOG_DISPLAYS[k]
    engine = inv_log_power(k, n_top)
    res = {}
    for e in range(-k, 0):
        res[e] = engine.c(e) - fixed[e]
    res[0] = engine.c(0) - fixed[0]
    for n in range(1, n_top + 1):
        res[n] = engine.c(n) - pref * bracket(n)
    return res


def power_display_residuals(k: int, n_top: int) -> dict[int, Fraction]:
    """Residuals of the displayed assembled expansions of
    (1/ln(1-z) + 1/z)^k against the engine.

    k=2: constant 1/4, coefficients (n+3)p_{n+3} - n p_{n+2}.
    k=3: constants 1/8, 1/16, 1/24, 133/4320 and the generic cubic
         bracket for n >= 1.  (The printed z^2 constant carries a sign
         typo; the verified exact value +1/24 is used here and the
         mismatch is reported by the identity registry, not patched.)
    """
    engine = sum_power(k, n_top)
    res: dict[int, Fraction] = {}
    if k == 2:
        res[0] = engine.c(0) - Fraction(1, 4)
        for n in range(1, n_top + 1):
            res[n] = engine.c(n) - ((n + 3) * p_recursion(n + 3) - n * p_recursion(n + 2))
    elif k == 3:
        res[0] = engine.c(0) - Fraction(1, 8)
        for n in range(1, n_top + 1):
            generic = Fraction(1, 2) * (
                Fraction((n + 4) * (n + 5)) * p_recursion(n + 4)
                - Fraction((n + 1) * (2 * n + 7)) * p_recursion(n + 3)
                + Fraction(n * n) * p_recursion(n + 2)
            )
            res[n] = engine.c(n) - generic
    else:
        raise ValueError("power_display_residuals: k in {2, 3}")
    return res


def assembly_residuals(k: int, n_top: int) -> dict[int, Fraction]:
    """Residuals of the binomial re-assembly

        (1/ln(1-z) + 1/z)^k = sum_j C(k, j) (1/z)^{k-j} ln^{-j}(1-z)

    including cancellation of every pole coefficient."""
    order = n_top
    lhs = sum_power(k, order)
    acc = TruncatedSeries.monomial(1, -k, order)
    for j in range(1, k + 1):
        term = inv_log_power(j, order + k - j).shift(j - k).scale(binomial(k, j))
        acc = acc + term
    diff = acc - lhs
    return {e: diff.c(e) for e in range(diff.m_min, min(diff.order, n_top) + 1)}


# ---------------------------------------------------------------------------
# Beta-weighted series coefficients for the log-Gamma / Glaisher /
# double-Gamma identities
# ---------------------------------------------------------------------------

def lngamma_weight(n: int) -> Fraction:
    """Weight (n+2) p_{n+3} - n p_{n+2} of the Beta series for
    ln Gamma(y) - y ln y + y."""
    return Fraction(n + 2) * p_recursion(n + 3) - Fraction(n) * p_recursion(n + 2)


def glaisher_integrand_series(order: int) -> TruncatedSeries:
    """Power-series coefficients w_n of

        W(z) = (1/z + 1/ln(1-z) - 1/2 + ln(1-z)/12) / ln^2(1-z),

    the integrand whose unit-interval integral is ln A - 1/4.  The pole
    and constant terms cancel exactly; W starts at z^1."""
    base = base_series(order + 2)
    numer = (
        base
        - TruncatedSeries.monomial(Fraction(1, 2), 0, base.order)
        + log_series(base.order).scale(Fraction(1, 12))
    )
    w = numer * inv_log_power(2, order + 2)
    return w


def lngamma2_weight(n: int) -> Fraction:
    """Derived weight of the Beta series for the double-Gamma defect:

        w_n = (n+2)(n+3)/2 p_{n+4} - (n+1)(n+2) p_{n+3}
              + (n^2 + n + 1/6)/2 p_{n+2}.

    Must agree exactly with glaisher_integrand_series coefficients."""
    return (
        Fraction((n + 2) * (n + 3), 2) * p_recursion(n + 4)
        - Fraction((n + 1) * (n + 2)) * p_recursion(n + 3)
        + Fraction(1, 2) * (Fraction(n * n + n) + Fraction(1, 6)) * p_recursion(n + 2)
    )


def lngamma2_weight_printed(n: int) -> Fraction:
    """The same weight as printed, with (n+2)^2 as the leading coefficient.
    Kept verbatim so the registry can report its exact residual."""
    return (
        Fraction((n + 2) ** 2) * p_recursion(n + 4)
        - Fraction((n + 1) * (n + 2)) * p_recursion(n + 3)
        + Fraction(1, 2) * (Fraction(n * n + n) + Fraction(1, 6)) * p_recursion(n + 2)
    )


def glaisher_weight_printed(n: int) -> Fraction:
    """Term of the printed series for ln A - 1/4:

        (n+2)/2 p_{n+4} + (n+1)(1/n - 1) p_{n+3}
        + [n^2/(2(n+1)) - 1 + (6n+1)/(12(n+1))] p_{n+2}.
    """
    return (
        Fraction(n + 2, 2) * p_recursion(n + 4)
        + Fraction(n + 1) * (Fraction(1, n) - 1) * p_recursion(n + 3)
        + (Fraction(n * n, 2 * (n + 1)) - 1 + Fraction(6 * n + 1, 12 * (n + 1)))
        * p_recursion(n + 2)
    )


# ---------------------------------------------------------------------------
# Integration-by-parts brackets for psi(x) - ln x
# ---------------------------------------------------------------------------

#: printed pole coefficients of the four displayed brackets
#: g_m(z) = m!/ln^{m+1}(1-z) + (polynomial in 1/z); index m = 1..4
PARTS_PRINTED: dict[int, dict[int, Fraction]] = {
    1: {-2: Fraction(-1), -1: Fraction(1)},
    2: {-3: Fraction(2), -2: Fraction(-3), -1: Fraction(1)},
    3: {-4: Fraction(-6), -3: Fraction(12), -2: Fraction(-7), -1: Fraction(1)},
    4: {-5: Fraction(24), -4: Fraction(-60), -3: Fraction(57), -2: Fraction(-22), -1: Fraction(1)},
}

#: boundary-term polynomial accumulated after m integrations by parts;
#: entry m holds the coefficients of 1/x^j, j = 1..m, appearing alongside
#: the -1/x^m integral
PARTS_BOUNDARY: dict[int, dict[int, Fraction]] = {
    1: {1: Fraction(-1, 2)},
    2: {1: Fraction(-1, 2), 2: Fraction(-1, 12)},
    3: {1: Fraction(-1, 2), 2: Fraction(-1, 12)},
    4: {1: Fraction(-1, 2), 2: Fraction(-1, 12), 4: Fraction(1, 120)},
}


def parts_bracket(m: int, order: int) -> TruncatedSeries:
    """Bracket g_m of the m-fold integration by parts of the
    psi(x) - ln x representation, derived by the exact rule
    g_{m+1} = (1-z) g_m' with g_0 = 1/z + 1/ln(1-z).

    Every g_m is pole-free; the series starts at z^0."""
    if m < 0 or m > 4:
        raise ValueError("parts_bracket: m in 0..4")
    g = base_series(order + 2 * m + 2)
    one = TruncatedSeries.monomial(1, 0, g.order)
    z = TruncatedSeries.monomial(1, 1, g.order)
    for _ in range(m):
        g = (one - z) * g.differentiate()
        one = TruncatedSeries.monomial(1, 0, g.order)
        z = TruncatedSeries.monomial(1, 1, g.order)
    if any(g.c(e) != 0 for e in range(g.m_min, 0)):
        raise AssertionError("parts_bracket: unexpected pole survived")
    return g


def parts_bracket_printed_coeffs(m: int, order: int) -> dict[int, Fraction]:
    """Residual pole coefficients of the printed bracket

        m!/ln^{m+1}(1-z) + sum_j c_j z^{-j}

    (zero residuals mean the printed pole polynomial cancels the poles of
    m!/ln^{m+1}; the fourth display does not cancel and the registry
    reports it)."""
    if m not in PARTS_PRINTED:
        raise ValueError("parts_bracket_printed_coeffs: m in 1..4")
    from .rational import factorial

    series = inv_log_power(m + 1, order).scale(factorial(m))
    acc = {e: series.c(e) for e in range(-(m + 1), 0)}
    for e, cval in PARTS_PRINTED[m].items():
        acc[e] = acc.get(e, Fraction(0)) + cval
    return acc
