"""logzeta: exact and high-precision verification of logarithmic-integral,
generating-function, and Stieltjes/zeta identities."""

__version__ = "0.1.0"

from .precision import DEFAULT_PRECISION  # noqa: F401
