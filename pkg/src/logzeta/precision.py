"""Working-precision conventions and the memoized constant catalog.

Reals are mpmath ``mpf`` values; a "value at P digits" is an mpf computed
under ``mp.workdps(P + guard)``.  Identity tolerances are derived from P
(tight class: 10^(5-P)) rather than hard-coded per call site.

The catalog computes each named constant once per (name, P) from the
in-house special-function stack, applies its acceptance cross-checks,
and can round-trip through a JSON cache file; a cached entry is never
served at lower precision than requested.
"""

from __future__ import annotations

import json
from pathlib import Path

from mpmath import mp

from . import special

__all__ = ["DEFAULT_PRECISION", "tight_tolerance", "ConstantCatalog", "CATALOG"]

DEFAULT_PRECISION = 50

#: guard digits used when computing at a requested precision
GUARD = 10


def tight_tolerance(precision: int):
    """Tolerance of the tight verification class at P digits: 10^(5-P)."""
    return mp.mpf(10) ** (5 - precision)


class ConstantCatalog:
    """Named high-precision constants, memoized by (name, precision).

    The zeta'(-3) entry is only accepted after the Euler-Maclaurin value
    and the functional-equation route agree to P-10 digits; ln A carries
    the analogous zeta'(-1) consistency requirement.
    """

    _NAMES = (
        "pi", "gamma", "ln2", "ln2pi", "ln_glaisher",
        "zeta2", "zeta3", "zeta4",
        "zeta_prime_minus1", "zeta_prime_minus2", "zeta_prime_minus3",
        "zeta_prime_0", "zeta_prime_2",
    )

    def __init__(self) -> None:
        self._store: dict[tuple[str, int], mp.mpf] = {}

    def names(self) -> tuple[str, ...]:
        return self._NAMES

    def value(self, name: str, precision: int = DEFAULT_PRECISION):
        if name not in self._NAMES:
            raise KeyError(f"unknown constant {name!r}")
        key = (name, precision)
        got = self._store.get(key)
        if got is None:
            got = self._compute(name, precision)
            self._store[key] = got
        return got

    # convenience accessors -------------------------------------------------

    def gamma(self, precision: int = DEFAULT_PRECISION):
        return self.value("gamma", precision)

    def ln2pi(self, precision: int = DEFAULT_PRECISION):
        return self.value("ln2pi", precision)

    def ln_glaisher(self, precision: int = DEFAULT_PRECISION):
        return self.value("ln_glaisher", precision)

    def zeta(self, k: int, precision: int = DEFAULT_PRECISION):
        return self.value(f"zeta{k}", precision)

    def zeta_prime(self, s: int, precision: int = DEFAULT_PRECISION):
        tag = {-1: "zeta_prime_minus1", -2: "zeta_prime_minus2",
               -3: "zeta_prime_minus3", 0: "zeta_prime_0", 2: "zeta_prime_2"}[s]
        return self.value(tag, precision)

    # computation ------------------------------------------------------------

    def _compute(self, name: str, precision: int):
        with mp.workdps(precision + GUARD):
            if name == "pi":
                return +mp.pi
            if name == "ln2":
                return mp.log(2)
            if name == "ln2pi":
                return mp.log(2 * mp.pi)
            if name == "gamma":
                return -special.digamma(mp.mpf(1))
            if name == "zeta2":
                return mp.pi**2 / 6
            if name == "zeta4":
                return mp.pi**4 / 90
            if name == "zeta3":
                return special.riemann_zeta(3)
            if name == "zeta_prime_0":
                return special.zeta_derivative(0)
            if name == "zeta_prime_2":
                return special.zeta_derivative(2)
            if name == "zeta_prime_minus1":
                return special.zeta_derivative(-1)
            if name == "zeta_prime_minus2":
                return special.zeta_derivative(-2)
            if name == "zeta_prime_minus3":
                direct = special.zeta_derivative(-3)
                other = special.zeta_derivative_reflection(-3)
                if abs(direct - other) > mp.mpf(10) ** (-(precision - 10)):
                    raise ArithmeticError(
                        "zeta'(-3): Euler-Maclaurin and reflection routes disagree"
                    )
                return direct
            if name == "ln_glaisher":
                zp = self.value("zeta_prime_minus1", precision)
                return mp.mpf(1) / 12 - zp
        raise KeyError(name)

    # cache ------------------------------------------------------------------

    def dump_cache(self, path: str | Path) -> None:
        payload = {
            f"{name}@{prec}": mp.nstr(val, prec + GUARD - 2)
            for (name, prec), val in sorted(self._store.items())
        }
        Path(path).write_text(json.dumps(payload, indent=0, sort_keys=True) + "\n")

    def load_cache(self, path: str | Path) -> int:
        """Load cached constants; entries only serve requests at <= their
        stored precision.  Returns the number of entries loaded."""
        p = Path(path)
        if not p.exists():
            return 0
        payload = json.loads(p.read_text())
        n = 0
        for key, text in payload.items():
            name, prec_s = key.rsplit("@", 1)
            prec = int(prec_s)
            if name not in self._NAMES:
                continue
            with mp.workdps(prec + GUARD):
                self._store[(name, prec)] = mp.mpf(text)
            n += 1
        return n


#: process-wide catalog instance (write-once per (name, P), then read-only)
CATALOG = ConstantCatalog()
