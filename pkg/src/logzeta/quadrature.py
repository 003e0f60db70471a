"""High-precision adaptive quadrature on (0,1) and (0,oo).

Double-exponential (tanh-sinh) rules with level doubling, plus an
exp-sinh rule and a split-at-one scheme for the half line.  Two details
matter for the integrands this project cares about:

* Nodes are produced together with their distance to the endpoints, so
  integrands built from expressions like (1-x)^(a-1) or ln(1-x) keep full
  relative precision arbitrarily close to the endpoints.

* The trapezoid sums extend adaptively in the transform variable.  For
  bounded integrands the transformed tail dies double-exponentially and
  only a handful of nodes beyond |t| ~ ln(ln(1/eps)) are touched, but
  kernels behaving like 1/(x ln^2 x) near an endpoint decay only singly
  exponentially in t and legitimately need |t| of order digits*ln(10).
  A fixed cutoff would silently drop an arctan-sized tail there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from mpmath import mp

__all__ = [
    "IntegrationResult",
    "AccuracyError",
    "integrate_unit",
    "integrate_semi_axis",
    "integrate_exp_sinh",
    "oloa_integrand",
    "OLOA_SERIES_CUTOVER",
]

#: crossover point below which 1/ln x + 1/(1-x) style kernels switch to
#: their exact power series in the distance to the singular endpoint
OLOA_SERIES_CUTOVER = mp.mpf(2) ** -10

_GUARD_DPS = 15
_MAX_NODES_PER_LEVEL = 400_000


@dataclass
class IntegrationResult:
    """Value plus the quadrature's own convergence diagnostics."""

    value: mp.mpf
    error_estimate: mp.mpf
    nodes: int
    levels: int

    def __float__(self) -> float:
        return float(self.value)


class AccuracyError(ArithmeticError):
    """Raised when level doubling stalls; carries the best estimate."""

    def __init__(self, message: str, result: IntegrationResult):
        super().__init__(message)
        self.result = result


# ---------------------------------------------------------------------------
# node generation (memoized per precision and level)
# ---------------------------------------------------------------------------

# key: (mp.prec, level) -> list of (x, 1-x, weight) for t = k*h, k = 1, 2, ...
# (level 0 stores every integer k; level L >= 1 stores odd multiples of h)
_unit_nodes: dict[tuple[int, int], list] = {}


def _unit_node(t):
    """tanh-sinh node on (0,1): x, 1-x and dx/dt at transform variable t."""
    u = mp.pi / 2 * mp.sinh(t)
    eu = mp.exp(-2 * abs(u))
    # x = (1 + tanh u)/2 ; complement computed without cancellation
    frac = eu / (1 + eu)
    if u >= 0:
        x, xc = 1 - frac, frac
    else:
        x, xc = frac, 1 - frac
    # dx/dt = (1/2) sech^2(u) * (pi/2) cosh(t)
    w = mp.pi * mp.cosh(t) * eu / (1 + eu) ** 2
    return x, xc, w


def _unit_nodes_for(level: int, count: int) -> list:
    """Node cache of the given refinement level, grown to ``count``."""
    key = (mp.prec, level)
    cache = _unit_nodes.setdefault(key, [])
    h = mp.mpf(1) / (1 << level)
    while len(cache) < count:
        k = len(cache) + 1
        t = (k if level == 0 else 2 * k - 1) * h
        cache.append(_unit_node(t))
    return cache


def _level_sum_unit(f, level: int, eps_term, scale, t_floor) -> tuple[mp.mpf, int, float]:
    """Sum of w*(f(x)+f(1-x mirror)) over the new nodes of a level.

    Node pairs are consumed at least out to |t| = t_floor, then until
    both members of a pair drop below eps_term*scale twice in a row.
    The floor matters for boundary-layer integrands such as (1+u)^-n,
    whose transformed mass sits far from t = 0 while the nearby terms
    are negligible; the caller feeds back each level's active range.
    Returns (sum, pairs, largest |t| with a non-negligible term)."""
    total = mp.mpf(0)
    small_streak = 0
    k = 0
    t_active = 0.0
    h = 1.0 / (1 << level)
    nodes = _unit_nodes_for(level, 64)
    while True:
        k += 1
        if k > _MAX_NODES_PER_LEVEL:
            raise AccuracyError(
                "tanh-sinh: node budget exhausted before tail decayed",
                IntegrationResult(total, mp.inf, k, level),
            )
        if k > len(nodes):
            nodes = _unit_nodes_for(level, 2 * k)
        x, xc, w = nodes[k - 1]
        t = (k if level == 0 else 2 * k - 1) * h
        # mirror node: t -> -t swaps x and 1-x
        fp = w * f(x, xc)
        fm = w * f(xc, x)
        total += fp + fm
        if abs(fp) < eps_term * scale and abs(fm) < eps_term * scale:
            small_streak += 1
            if small_streak >= 2 and t >= t_floor:
                break
        else:
            small_streak = 0
            t_active = t
    return total, k, t_active


def integrate_unit(
    f: Callable,
    target_digits: int,
    *,
    wants_complement: bool = False,
    max_level: int = 12,
) -> IntegrationResult:
    """Tanh-sinh integral of f over (0,1) to ~target_digits digits.

    ``f`` is called as f(x) by default; with ``wants_complement`` it is
    called as f(x, 1-x) and receives the complement at full precision.
    Raises AccuracyError (carrying the best estimate) if level doubling
    stops improving before the tolerance is met.
    """
    with mp.workdps(target_digits + _GUARD_DPS):
        if wants_complement:
            g = f
        else:
            g = lambda x, xc: f(x)
        tol = mp.mpf(10) ** (-target_digits)
        eps_term = mp.mpf(10) ** (-(target_digits + 8))

        x0, xc0, w0 = _unit_node(mp.mpf(0))
        center = w0 * g(x0, xc0)
        scale = max(mp.mpf(1), abs(center))

        t_floor = 4.5
        tail0, n0, t_act = _level_sum_unit(g, 0, eps_term, scale, t_floor)
        h = mp.mpf(1)
        estimate = h * (center + tail0)
        nodes = 2 * n0 + 1
        prev = None
        for level in range(1, max_level + 1):
            h /= 2
            scale = max(mp.mpf(1), abs(estimate))
            t_floor = max(4.5, t_act + 1.0)
            new, n, t_act = _level_sum_unit(g, level, eps_term, scale, t_floor)
            prev = estimate
            estimate = prev / 2 + h * new
            nodes += 2 * n
            err = abs(estimate - prev)
            if err <= tol * max(mp.mpf(1), abs(estimate)):
                return IntegrationResult(estimate, err, nodes, level)
        raise AccuracyError(
            f"tanh-sinh: no convergence to {target_digits} digits "
            f"within {max_level} levels",
            IntegrationResult(estimate, abs(estimate - prev), nodes, max_level),
        )


# ---------------------------------------------------------------------------
# half line
# ---------------------------------------------------------------------------

def integrate_semi_axis(
    f: Callable,
    target_digits: int,
    *,
    method: str = "split",
    max_level: int = 12,
) -> IntegrationResult:
    """Integral of f over (0, oo).

    ``split`` (default) cuts at u = 1 and maps the far half back to the
    unit interval with u -> 1/u; both halves then go through the
    tanh-sinh rule.  This is the robust choice for kernels carrying
    1/(ln^2 u + pi^2) factors, whose u -> 1/u symmetry the split
    preserves.  ``exp_sinh`` applies the exponential double-exponential
    transform directly.
    """
    if method == "exp_sinh":
        return integrate_exp_sinh(f, target_digits, max_level=max_level)
    if method != "split":
        raise ValueError(f"integrate_semi_axis: unknown method {method!r}")
    near = integrate_unit(lambda u: f(u), target_digits + 1, max_level=max_level)
    far = integrate_unit(
        lambda v: f(1 / v) / (v * v), target_digits + 1, max_level=max_level
    )
    with mp.workdps(target_digits + _GUARD_DPS):
        return IntegrationResult(
            near.value + far.value,
            near.error_estimate + far.error_estimate,
            near.nodes + far.nodes,
            max(near.levels, far.levels),
        )


def _exp_sinh_level_sum(f, level: int, eps_term, scale, t_floor):
    total = mp.mpf(0)
    h = mp.mpf(1) / (1 << level)
    small_streak = 0
    k = 0
    t_active = 0.0
    while True:
        k += 1
        if k > _MAX_NODES_PER_LEVEL:
            raise AccuracyError(
                "exp-sinh: node budget exhausted",
                IntegrationResult(total, mp.inf, k, level),
            )
        t = (k if level == 0 else 2 * k - 1) * h
        largest = mp.mpf(0)
        for tt in (t, -t):
            u = mp.pi / 2 * mp.sinh(tt)
            x = mp.exp(u)
            w = x * mp.pi / 2 * mp.cosh(tt)
            part = w * f(x)
            total += part
            largest = max(largest, abs(part))
        if largest < eps_term * scale:
            small_streak += 1
            if small_streak >= 2 and float(t) >= t_floor:
                break
        else:
            small_streak = 0
            t_active = float(t)
    return total, k, t_active


def integrate_exp_sinh(f: Callable, target_digits: int, *, max_level: int = 12) -> IntegrationResult:
    """Exp-sinh quadrature of f over (0, oo)."""
    with mp.workdps(target_digits + _GUARD_DPS):
        tol = mp.mpf(10) ** (-target_digits)
        eps_term = mp.mpf(10) ** (-(target_digits + 8))
        center = f(mp.mpf(1)) * mp.pi / 2
        scale = max(mp.mpf(1), abs(center))
        t_floor = 4.5
        tail0, n0, t_act = _exp_sinh_level_sum(f, 0, eps_term, scale, t_floor)
        h = mp.mpf(1)
        estimate = h * (center + tail0)
        nodes = 2 * n0 + 1
        prev = None
        for level in range(1, max_level + 1):
            h /= 2
            scale = max(mp.mpf(1), abs(estimate))
            t_floor = max(4.5, t_act + 1.0)
            new, n, t_act = _exp_sinh_level_sum(f, level, eps_term, scale, t_floor)
            prev = estimate
            estimate = prev / 2 + h * new
            nodes += 2 * n
            err = abs(estimate - prev)
            if err <= tol * max(mp.mpf(1), abs(estimate)):
                return IntegrationResult(estimate, err, nodes, level)
        raise AccuracyError(
            f"exp-sinh: no convergence to {target_digits} digits",
            IntegrationResult(estimate, abs(estimate - prev), nodes, max_level),
        )


# ---------------------------------------------------------------------------
# the log-kernel integrand family
# ---------------------------------------------------------------------------

_oloa_series_coeffs: dict[int, list] = {}


def _oloa_coeffs(terms: int) -> list:
    """mpf images of the p-coefficients of 1/ln x + 1/(1-x) in powers of 1-x."""
    key = (mp.prec, terms)
    cached = _oloa_series_coeffs.get(key)
    if cached is None:
        from .rational import p_recursion

        cached = [mp.mpf(p_recursion(j + 2).numerator) / p_recursion(j + 2).denominator
                  for j in range(terms)]
        _oloa_series_coeffs[key] = cached
    return cached


def oloa_kernel(x, xc, series_terms: int = 40):
    """Stable 1/ln x + 1/(1-x) given x and its complement xc = 1-x.

    Near x = 1 the two blow-ups cancel to the finite limit 1/2; the
    truncated power series in xc (coefficients p_{n+2}) removes the
    cancellation once xc < 2^-10.
    """
    if xc < OLOA_SERIES_CUTOVER:
        coeffs = _oloa_coeffs(series_terms)
        acc = mp.mpf(0)
        for c in reversed(coeffs):
            acc = acc * xc + c
        return acc
    return 1 / mp.log(x) + 1 / xc


def oloa_integrand(k: int, sigma, x, xc=None):
    """(1/ln x + 1/(1-x))^k * x^sigma on the open unit interval.

    ``xc`` is the complement 1-x; passing it explicitly (as the
    quadrature nodes do) keeps full precision when x is so close to 1
    that 1-x underflows the working precision."""
    if xc is None:
        xc = 1 - x
    if x <= 0 or xc <= 0:
        raise ValueError("oloa_integrand: x must lie in (0, 1)")
    base = oloa_kernel(x, xc)
    val = base**k
    if sigma:
        val *= mp.power(x, sigma)
    return val
