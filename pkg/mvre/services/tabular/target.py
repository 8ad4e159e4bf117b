# mvre/services/tabular/target.py

"""
Natural-log price transform and its inverse.
"""

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import ValidationError


def log_target(usd):
    """
    Natural log of a price (scalar or array). Prices must be > 0.
    """
    arr = np.asarray(usd, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise ValidationError("Prices must be finite and > 0 for the log transform")
    out = np.log(arr)
    return float(out) if out.ndim == 0 else out


def inv_log_target(y):
    """ exp, the inverse of log_target """
    out = np.exp(np.asarray(y, dtype=np.float64))
    return float(out) if out.ndim == 0 else out
