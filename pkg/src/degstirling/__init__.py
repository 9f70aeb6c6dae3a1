"""Exact degenerate r-Stirling numbers and related polynomial families over Q[L]."""

from .core import (
    L,
    X,
    LambdaPoly,
    XPoly,
    degenerate_falling,
    degenerate_rising,
    lambda_binomial,
    one_factorial_inverse_lambda,
)
from .series import Series, SeriesError, compose, exp_deg, geometric_pow, log_deg, reversion, scaled_log

__version__ = "0.1.0"
