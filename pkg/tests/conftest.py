"""Shared helpers: sphere evaluations are expensive (seconds each), so
tests share one cache keyed by (eta, l_max, target_tol)."""

import functools
import math

from condcasimir.sphere import SumConfig, q_sphere_total


@functools.cache
def sphere_breakdown(eta_key, l_max=60, target_tol=1e-6):
    """Cached q_sphere_total; eta_key is a float or the string 'inf'."""
    eta = math.inf if eta_key == "inf" else float(eta_key)
    return q_sphere_total(eta, SumConfig(l_max=l_max, target_tol=target_tol))
