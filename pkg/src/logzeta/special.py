"""Configurable-precision special functions.

Everything upstream of the identity checks is implemented here from
standard algorithms: digamma/polygamma/log-Gamma by upward recurrence
into their Bernoulli-number asymptotic series, the Hurwitz zeta function
(and its s-derivative) by Euler-Maclaurin summation valid on both sides
of s = 1, the sine/cosine integrals by power series with a precision
bump against cancellation (asymptotic series for large argument), and
the polylogarithm/Lerch functions at negative real argument through
their exponential integral representations.

All routines work at the ambient mpmath precision plus a small guard;
results carry about P - 5 correct digits at working precision P.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp

from .quadrature import integrate_semi_axis, integrate_unit
from .rational import bernoulli_classical

__all__ = [
    "digamma",
    "polygamma",
    "log_gamma",
    "beta",
    "hurwitz_zeta",
    "hurwitz_zeta_sderiv",
    "riemann_zeta",
    "zeta_derivative",
    "zeta_derivative_reflection",
    "sine_integral",
    "cosine_integral",
    "zeta_exp_kernel",
    "psi_plus_gamma",
    "polylog_neg",
    "polylog_s_derivative",
    "lerch_phi",
]


def _mpq(q: Fraction):
    return mp.mpf(q.numerator) / q.denominator


def _bern_mpf(n: int):
    return _mpq(bernoulli_classical(n))


# ---------------------------------------------------------------------------
# Gamma family: asymptotic series + upward recurrence
# ---------------------------------------------------------------------------

def _asym_threshold() -> int:
    # The Stirling-type series bottoms out near e^{-2 pi x}; x ~ 0.4*dps
    # leaves comfortable margin for a P-5 digit contract.
    return max(16, int(0.42 * mp.dps) + 6)


def digamma(x):
    """psi(x) for real x > 0."""
    x = mp.mpf(x)
    if x <= 0:
        raise ValueError("digamma: argument must be positive")
    with mp.extradps(10):
        shift = mp.mpf(0)
        x0 = _asym_threshold()
        while x < x0:
            shift -= 1 / x
            x += 1
        res = mp.log(x) - 1 / (2 * x)
        x2 = x * x
        xp = x2
        prev = mp.inf
        k = 1
        while True:
            term = _bern_mpf(2 * k) / (2 * k) / xp
            if abs(term) >= prev:
                break
            res -= term
            if abs(term) < mp.eps * abs(res):
                break
            prev = abs(term)
            xp *= x2
            k += 1
        return res + shift


def polygamma(m: int, x):
    """psi^{(m)}(x) for m >= 0 and real x > 0."""
    if m < 0:
        raise ValueError("polygamma: order must be >= 0")
    if m == 0:
        return digamma(x)
    x = mp.mpf(x)
    if x <= 0:
        raise ValueError("polygamma: argument must be positive")
    with mp.extradps(10):
        sign_rec = (-1) ** m * mp.factorial(m)
        shift = mp.mpf(0)
        x0 = _asym_threshold()
        while x < x0:
            # psi^{(m)}(x) = psi^{(m)}(x+1) - (-1)^m m!/x^{m+1}
            shift -= sign_rec / x ** (m + 1)
            x += 1
        res = mp.factorial(m - 1) / x**m + mp.factorial(m) / (2 * x ** (m + 1))
        x2 = x * x
        xp = x ** (m + 2)
        prev = mp.inf
        k = 1
        while True:
            term = _bern_mpf(2 * k) * mp.factorial(2 * k + m - 1) / mp.factorial(2 * k) / xp
            if abs(term) >= prev:
                break
            res += term
            if abs(term) < mp.eps * abs(res):
                break
            prev = abs(term)
            xp *= x2
            k += 1
        return (-1) ** (m + 1) * res + shift


def log_gamma(x):
    """ln Gamma(x) for real x > 0, by the Stirling series."""
    x = mp.mpf(x)
    if x <= 0:
        raise ValueError("log_gamma: argument must be positive")
    with mp.extradps(10):
        shift = mp.mpf(0)
        x0 = _asym_threshold()
        while x < x0:
            shift -= mp.log(x)
            x += 1
        res = (x - mp.mpf(1) / 2) * mp.log(x) - x + mp.log(2 * mp.pi) / 2
        x2 = x * x
        xp = x
        prev = mp.inf
        k = 1
        while True:
            term = _bern_mpf(2 * k) / ((2 * k) * (2 * k - 1) * xp)
            if abs(term) >= prev:
                break
            res += term
            if abs(term) < mp.eps * abs(res):
                break
            prev = abs(term)
            xp *= x2
            k += 1
        return res + shift


def beta(x, y):
    """Euler Beta function for positive real arguments."""
    x, y = mp.mpf(x), mp.mpf(y)
    if x <= 0 or y <= 0:
        raise ValueError("beta: arguments must be positive")
    return mp.exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y))


_zeta_int_cache: dict[int, list] = {}


def _zeta_int(k: int):
    """zeta(k) for integer k >= 2, cached per working precision."""
    cache = _zeta_int_cache.setdefault(mp.prec, [])
    while len(cache) < k - 1:
        cache.append(riemann_zeta(len(cache) + 2))
    return cache[k - 2]


def psi_plus_gamma(x):
    """psi(x+1) + gamma without the cancellation that plagues the naive
    difference for small x (the value itself is O(x) there)."""
    x = mp.mpf(x)
    if x > mp.mpf(1) / 2:
        return digamma(x + 1) - digamma(mp.mpf(1))
    with mp.extradps(8):
        # psi(x+1)+gamma = sum_{k>=2} (-1)^k zeta(k) x^{k-1} converges
        # geometrically for |x| <= 1/2.
        acc = mp.mpf(0)
        xp = x
        k = 2
        while True:
            term = (-1) ** k * _zeta_int(k) * xp
            acc += term
            if abs(term) < mp.eps * (abs(acc) + mp.eps):
                break
            xp *= x
            k += 1
        return acc


# ---------------------------------------------------------------------------
# Hurwitz zeta by Euler-Maclaurin, with term-differentiated variant
# ---------------------------------------------------------------------------

def _em_shift(a) -> int:
    return max(8, int(1.3 * mp.dps) + 8 - int(a))


def hurwitz_zeta(s, a=1):
    """zeta(s, a) for real s != 1 and a > 0 (analytic continuation is
    built into the Euler-Maclaurin tail)."""
    s = mp.mpf(s)
    a = mp.mpf(a)
    if a <= 0:
        raise ValueError("hurwitz_zeta: a must be positive")
    if s == 1:
        raise ValueError("hurwitz_zeta: pole at s = 1")
    with mp.extradps(12):
        M = _em_shift(a)
        base = mp.mpf(0)
        for n in range(M):
            base += (n + a) ** (-s)
        x = a + M
        res = x ** (1 - s) / (s - 1) + x ** (-s) / 2
        poch = s                      # (s)_{2k-1} at k = 1
        xpow = x ** (-s - 1)
        prev = mp.inf
        k = 1
        while True:
            term = _bern_mpf(2 * k) / mp.factorial(2 * k) * poch * xpow
            if abs(term) >= prev:
                break
            res += term
            if abs(term) < mp.eps * (abs(base) + abs(res) + 1):
                break
            prev = abs(term)
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            xpow /= x * x
            k += 1
        return base + res


def hurwitz_zeta_sderiv(s, a=1):
    """d/ds zeta(s, a), term-differentiated Euler-Maclaurin."""
    s = mp.mpf(s)
    a = mp.mpf(a)
    if a <= 0:
        raise ValueError("hurwitz_zeta_sderiv: a must be positive")
    if s == 1:
        raise ValueError("hurwitz_zeta_sderiv: pole at s = 1")
    with mp.extradps(12):
        M = _em_shift(a)
        base = mp.mpf(0)
        for n in range(M):
            na = n + a
            base += -mp.log(na) * na ** (-s)
        x = a + M
        lx = mp.log(x)
        res = x ** (1 - s) * (-lx / (s - 1) - 1 / (s - 1) ** 2)
        res += -lx * x ** (-s) / 2
        # Pochhammer (s)_{2k-1} and its s-derivative, updated jointly.
        poch_v = s
        poch_d = mp.mpf(1)
        xpow = x ** (-s - 1)
        prev = mp.inf
        k = 1
        while True:
            c = _bern_mpf(2 * k) / mp.factorial(2 * k)
            term = c * (poch_d - poch_v * lx) * xpow
            gauge = abs(c * poch_v * xpow) + abs(term)
            if gauge >= prev:
                break
            res += term
            if gauge < mp.eps * (abs(base) + abs(res) + 1):
                break
            prev = gauge
            for j in (2 * k - 1, 2 * k):
                poch_d = poch_d * (s + j) + poch_v
                poch_v = poch_v * (s + j)
            xpow /= x * x
            k += 1
        return base + res


def riemann_zeta(s):
    """zeta(s) for real s != 1."""
    return hurwitz_zeta(s, 1)


def zeta_derivative(s):
    """zeta'(s) for real s != 1, by term-differentiated Euler-Maclaurin."""
    return hurwitz_zeta_sderiv(s, 1)


def zeta_derivative_reflection(s):
    """zeta'(s) via logarithmic differentiation of the functional equation

        zeta'(s)/zeta(s) = ln(2 pi) + (pi/2) tan(pi s / 2)^-1 ... ,

    i.e. zeta'(s) = zeta(s) [ln 2pi + (pi/2) cot(pi s/2) - psi(1-s)
    - zeta'(1-s)/zeta(1-s)].  Usable where zeta(s) and zeta(1-s) are
    nonzero; serves as the independent cross-check route for zeta'(-3).
    """
    s = mp.mpf(s)
    with mp.extradps(10):
        zs = riemann_zeta(s)
        z1s = riemann_zeta(1 - s)
        if zs == 0 or z1s == 0:
            raise ValueError("zeta_derivative_reflection: zeta zero in the chain")
        cot = mp.cos(mp.pi * s / 2) / mp.sin(mp.pi * s / 2)
        return zs * (mp.log(2 * mp.pi) + mp.pi / 2 * cot - digamma(1 - s)
                     - zeta_derivative(1 - s) / z1s)


# ---------------------------------------------------------------------------
# sine and cosine integrals
# ---------------------------------------------------------------------------

def _si_series(x):
    with mp.extradps(int(0.45 * float(x)) + 10):
        acc = mp.mpf(0)
        term = mp.mpf(x)
        x2 = x * x
        k = 0
        while True:
            acc += term / (2 * k + 1)
            nxt = -term * x2 / ((2 * k + 2) * (2 * k + 3))
            if abs(nxt) < mp.eps * (abs(acc) + 1):
                break
            term = nxt
            k += 1
        return acc


def _ci_series(x):
    g = -digamma(mp.mpf(1))
    with mp.extradps(int(0.45 * float(x)) + 10):
        acc = mp.mpf(0)
        x2 = x * x
        term = -x2 / 2
        k = 1
        while True:
            acc += term / (2 * k)
            nxt = -term * x2 / ((2 * k + 1) * (2 * k + 2))
            if abs(nxt) < mp.eps * (abs(acc) + 1):
                break
            term = nxt
            k += 1
        return g + mp.log(x) + acc


def _si_ci_asymptotic(x):
    # f(x) ~ (1/x) sum (-1)^k (2k)!/x^{2k},  g(x) ~ (1/x^2) sum (-1)^k (2k+1)!/x^{2k}
    f = mp.mpf(0)
    g = mp.mpf(0)
    x2 = x * x
    term_f = 1 / x
    term_g = 1 / x2
    k = 0
    while True:
        f += term_f
        g += term_g
        nf = -term_f * (2 * k + 1) * (2 * k + 2) / x2
        ng = -term_g * (2 * k + 2) * (2 * k + 3) / x2
        if abs(nf) >= abs(term_f) or abs(nf) < mp.eps * (abs(f) + 1):
            break
        term_f, term_g = nf, ng
        k += 1
    return f, g


def sine_integral(x):
    """Si(x) = int_0^x sin(t)/t dt for x >= 0."""
    x = mp.mpf(x)
    if x < 0:
        raise ValueError("sine_integral: x >= 0 required")
    if x == 0:
        return mp.mpf(0)
    if x <= 2.5 * (mp.dps + 6):
        return _si_series(x)
    with mp.extradps(10):
        f, g = _si_ci_asymptotic(x)
        return mp.pi / 2 - f * mp.cos(x) - g * mp.sin(x)


def cosine_integral(x):
    """Ci(x) for x > 0."""
    x = mp.mpf(x)
    if x <= 0:
        raise ValueError("cosine_integral: x > 0 required")
    if x <= 2.5 * (mp.dps + 6):
        return _ci_series(x)
    with mp.extradps(10):
        f, g = _si_ci_asymptotic(x)
        return f * mp.sin(x) - g * mp.cos(x)


# ---------------------------------------------------------------------------
# the exponential zeta kernel and the polylogarithm/Lerch stack
# ---------------------------------------------------------------------------

_ZK_CUTOVER = mp.mpf(3) / 10


def zeta_exp_kernel(t):
    """K(t) = 1/(e^t - 1) - e^{-t}/t, the kernel of the exponential
    representation of zeta(s,1) - 1/(s-1).

    For t below 0.3 the two poles cancel to 1/2 - 5t/12 + ...; the exact
    series with coefficients [B_{n+1} - (-1)^{n+1}]/(n+1)! removes the
    cancellation."""
    t = mp.mpf(t)
    if t <= 0:
        raise ValueError("zeta_exp_kernel: t > 0 required")
    if t < _ZK_CUTOVER:
        acc = mp.mpf(0)
        tp = mp.mpf(1)
        n = 0
        while True:
            c = (_bern_mpf(n + 1) - (-1) ** (n + 1)) / mp.factorial(n + 1)
            term = c * tp
            acc += term
            if n > 4 and abs(tp) < mp.eps:
                break
            tp *= t
            n += 1
            if n > mp.dps * 3 + 30:
                break
        return acc
    return 1 / mp.expm1(t) - mp.exp(-t) / t


def polylog_neg(s, v, target_digits: int | None = None):
    """Li_s(-v) for s > 0 and v >= 0, by quadrature of the exponential
    integral representation Li_s(z) = (z/Gamma(s)) int t^{s-1}/(e^t - z) dt."""
    s = mp.mpf(s)
    v = mp.mpf(v)
    if s <= 0:
        raise ValueError("polylog_neg: s > 0 required")
    if v < 0:
        raise ValueError("polylog_neg: v >= 0 required")
    if v == 0:
        return mp.mpf(0)
    digits = target_digits or (mp.dps + 5)
    res = integrate_semi_axis(
        lambda t: t ** (s - 1) * mp.exp(-t) / (1 + v * mp.exp(-t)),
        digits,
    )
    return -v * res.value / mp.exp(log_gamma(s))


def _polylog_moment(m: int, v, digits: int):
    """J_m(v) = int_0^oo ln^m(t) e^{-t} / (1 + v e^{-t}) dt."""
    res = integrate_semi_axis(
        lambda t: mp.log(t) ** m * mp.exp(-t) / (1 + v * mp.exp(-t)),
        digits,
    )
    return res.value


def polylog_s_derivative(k: int, v, target_digits: int | None = None):
    """d^k/ds^k Li_s(-v) at s = 1, for k in {0, 1, 2}.

    Differentiation happens under the integral sign: the factor t^{s-1}
    contributes ln^k(t), and the 1/Gamma(s) prefactor contributes its own
    derivatives at 1 (gamma, gamma^2 - zeta(2))."""
    if k not in (0, 1, 2):
        raise ValueError("polylog_s_derivative: k in {0, 1, 2}")
    v = mp.mpf(v)
    digits = target_digits or (mp.dps + 5)
    li1 = -mp.log1p(v)
    if k == 0:
        return li1
    g = -digamma(mp.mpf(1))
    j1 = _polylog_moment(1, v, digits)
    if k == 1:
        return g * li1 - v * j1
    z2 = mp.pi**2 / 6
    j2 = _polylog_moment(2, v, digits)
    return (g * g - z2) * li1 - v * (2 * g * j1 + j2)


def lerch_phi(v, s, a, target_digits: int | None = None):
    """Phi(-v, s, a) for v >= 0, s > 0, a > 0, via the integral
    representation Phi(z,s,a) = (1/Gamma(s)) int t^{s-1} e^{-at}/(1 - z e^{-t}) dt."""
    v = mp.mpf(v)
    s = mp.mpf(s)
    a = mp.mpf(a)
    if v < 0 or s <= 0 or a <= 0:
        raise ValueError("lerch_phi: need v >= 0, s > 0, a > 0")
    digits = target_digits or (mp.dps + 5)
    res = integrate_semi_axis(
        lambda t: t ** (s - 1) * mp.exp(-a * t) / (1 + v * mp.exp(-t)),
        digits,
    )
    return res.value / mp.exp(log_gamma(s))
