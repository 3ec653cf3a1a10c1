"""Riccati-type modified spherical Bessel functions and Debye kernels.

The sphere-mode kernels only ever need the combinations s_l*e_l,
(s_l*e_l)' and s_l'*e_l', where

    s_l(x) = sqrt(pi*x/2) * I_{l+1/2}(x),
    e_l(x) = sqrt(2*x/pi) * K_{l+1/2}(x).

Everything here is built from the two neighbour ratios

    RI = I_{nu+1}(x)/I_{nu}(x),   RK = K_{nu+1}(x)/K_{nu}(x),

which are well conditioned for all (l, x): RI comes from the scaled
Bessel functions where they are representable and from the standard
continued fraction otherwise, RK from the (stable) upward recurrence
starting at the closed-form K_{1/2}.  The Wronskian
I_nu*K_{nu+1} + I_{nu+1}*K_nu = 1/x then gives

    s_l(x)*e_l(x) = 1/(RI + RK)

without any exponential factors, so products never overflow.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy import special as sc

# largest supported multipole order
MAX_ORDER = 200

# scaled I_nu values below this are treated as underflowed and the
# continued fraction is used instead
_IVE_TINY = 1e-280


def _check_args(l, x):
    if l < 0 or l != int(l):
        raise ValueError(f"order l must be a nonnegative integer, got {l}")
    if l > MAX_ORDER:
        raise ValueError(f"order l={l} exceeds maximum {MAX_ORDER}")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or not np.all(x > 0):
        raise ValueError("argument x must be positive and finite")
    return x


def _ratio_i_cf(nu, x):
    """I_{nu+1}/I_nu by the Gautschi continued fraction (modified Lentz)."""
    tiny = 1e-300
    f = np.full_like(x, tiny)
    c = f.copy()
    d = np.zeros_like(x)
    for n in range(1, 500):
        b = 2.0 * (nu + n) / x
        d = b + d
        d = np.where(d == 0.0, tiny, d)
        c = b + 1.0 / c
        c = np.where(c == 0.0, tiny, c)
        d = 1.0 / d
        delta = c * d
        f = f * delta
        if np.all(np.abs(delta - 1.0) < 1e-16):
            break
    return f


def _ratio_i(l, x):
    """RI = I_{l+3/2}(x)/I_{l+1/2}(x), elementwise over x."""
    nu = l + 0.5
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    ri = np.empty_like(x)
    # scipy's scaled I is reliable up to ~1e8 and as long as it does not
    # underflow (x much smaller than nu)
    huge = x > 1e8
    with np.errstate(over="ignore", invalid="ignore"):
        den = np.where(huge, 0.0, sc.ive(nu, x))
        num = sc.ive(nu + 1.0, np.where(huge, 1.0, x))
    ok = den > _IVE_TINY
    ri[ok] = num[ok] / den[ok]
    if np.any(huge):
        # large-argument expansion of the neighbour ratio
        xs = x[huge]
        delta = 8.0 * nu + 4.0
        mu = 4.0 * nu * nu
        c2 = delta * (delta - 6.0 * mu - 2.0) / 128.0
        ri[huge] = 1.0 - (2.0 * nu + 1.0) / (2.0 * xs) + c2 / (xs * xs)
    cfmask = ~ok & ~huge
    if np.any(cfmask):
        ri[cfmask] = _ratio_i_cf(nu, x[cfmask])
    return ri[0] if scalar else ri


def _ratio_k(l, x):
    """RK = K_{l+3/2}(x)/K_{l+1/2}(x) by upward ratio recurrence."""
    r = 1.0 + 1.0 / x  # K_{3/2}/K_{1/2}, exact
    for j in range(1, l + 1):
        r = (2 * j + 1) / x + 1.0 / r
    return r


def product_se(l, x):
    """s_l(x) * e_l(x); positive, tends to 1/2 as x -> infinity."""
    x = _check_args(l, x)
    ri = _ratio_i(l, x)
    rk = _ratio_k(l, x)
    return 1.0 / (ri + rk)


def product_se_deriv(l, x):
    """d/dx [s_l(x) e_l(x)]."""
    x = _check_args(l, x)
    ri = _ratio_i(l, x)
    rk = _ratio_k(l, x)
    p = 1.0 / (ri + rk)
    return p * ((2.0 * l + 2.0) / x + ri - rk)


def product_dsde(l, x):
    """s_l'(x) * e_l'(x)."""
    x = _check_args(l, x)
    ri = _ratio_i(l, x)
    rk = _ratio_k(l, x)
    p = 1.0 / (ri + rk)
    return p * ((l + 1.0) / x + ri) * ((l + 1.0) / x - rk)


def _se_combinations(l, x):
    """(se, (se)', s'e') in one pass; x may be an array."""
    ri = _ratio_i(l, x)
    rk = _ratio_k(l, x)
    p = 1.0 / (ri + rk)
    dp = p * ((2.0 * l + 2.0) / x + ri - rk)
    dsde = p * ((l + 1.0) / x + ri) * ((l + 1.0) / x - rk)
    return p, dp, dsde


@dataclass(frozen=True)
class BesselPair:
    """Exponentially scaled s_l, e_l and derivatives at one point.

    ``log_s`` and ``log_e`` hold log(e^{-x} s_l) and log(e^{x} e_l); the
    plain scaled fields are their exponentials and can under/overflow for
    extreme (l, x) even though every product of an s- and an e-quantity
    stays representable.  ``dlog_s`` and ``dlog_e`` are the logarithmic
    derivatives s'/s and e'/e.
    """

    l: int
    x: float
    s_scaled: float
    e_scaled: float
    ds_scaled: float
    de_scaled: float
    log_s: float
    log_e: float
    dlog_s: float
    dlog_e: float

    @property
    def wronskian(self):
        """s_l e_l' - s_l' e_l, computed overflow-free; exactly -1."""
        p = math.exp(self.log_s + self.log_e)
        return p * (self.dlog_e - self.dlog_s)


def bessel_pair(l, x):
    """Scaled Bessel pair with derivatives at (l, x)."""
    xa = _check_args(l, float(x))
    x = float(xa)
    # K side: exact upward recurrence in log space for e~_l = e^x e_l
    le = 0.0
    r = 1.0 + 1.0 / x
    for j in range(1, l + 1):
        le += math.log(r)
        r = (2 * j + 1) / x + 1.0 / r
    rk = r
    # I side: seed ratio at the top order, then exact downward chain for
    # the log of s~_l = e^{-x} s_l
    ri = float(_ratio_i(l, np.asarray(x)))
    ls = math.log1p(-math.exp(-2.0 * x)) - math.log(2.0)
    if l >= 1:
        h = ri  # H_{l+1} = s_{l+1}/s_l
        logs = []
        for j in range(l, 0, -1):
            h = 1.0 / ((2 * j + 1) / x + h)  # H_j = s_j/s_{j-1}
            logs.append(math.log(h))
        ls += sum(logs)
    dlog_s = (l + 1.0) / x + ri
    dlog_e = (l + 1.0) / x - rk
    s_scaled = math.exp(ls) if ls < 709 else math.inf
    e_scaled = math.exp(le) if le < 709 else math.inf
    return BesselPair(
        l=l, x=x,
        s_scaled=s_scaled, e_scaled=e_scaled,
        ds_scaled=s_scaled * dlog_s, de_scaled=e_scaled * dlog_e,
        log_s=ls, log_e=le, dlog_s=dlog_s, dlog_e=dlog_e,
    )


@dataclass(frozen=True)
class UniformVariables:
    """Large-order variables nu = l + 1/2, z = x/nu, t = 1/sqrt(1+z^2)."""

    nu: float
    z: object  # scalar or ndarray
    t: object

    @classmethod
    def from_order(cls, l, z):
        z = np.asarray(z, dtype=float)
        t = 1.0 / np.sqrt(1.0 + z * z)
        if z.ndim == 0:
            z, t = float(z), float(t)
        return cls(nu=l + 0.5, z=z, t=t)


def debye_f0_te(uv, eta):
    """Leading large-order kernel of the TE log-derivative."""
    z, t = uv.z, uv.t
    if math.isinf(eta):
        return t * t / z
    return eta * t**3 / (1.0 + eta * t * z)


def debye_f2_te(uv, eta):
    """Second large-order kernel of the TE log-derivative."""
    z, t = uv.z, uv.t
    t2 = t * t
    poly_a = 2.0 + t2 * (-27.0 + t2 * (60.0 - 35.0 * t2))
    poly_b = 1.0 + t2 * (-12.0 + 15.0 * t2)
    if math.isinf(eta):
        return -(z * t2 * t2 / 4.0) * poly_b
    w = 1.0 + eta * t * z
    return -eta * t**3 / (8.0 * w * w) * (poly_a + 2.0 * t**3 * z**3 * eta * poly_b)


def debye_kernel_tm(uv, eta):
    """Combined large-order subtraction kernel for the TM log-derivative."""
    nu, z, t = uv.nu, uv.z, uv.t
    t2 = t * t
    poly_a = 2.0 + t2 * (-25.0 + t2 * (60.0 - 35.0 * t2))
    poly_b = 1.0 + t2 * (-12.0 + 21.0 * t2)
    if math.isinf(eta):
        return t2 - (t2 * t2 * z * z / (4.0 * nu * nu)) * poly_b
    w = z + eta / t
    return eta * t / w - eta * t * z / (8.0 * nu * nu * w * w) * (
        poly_a + 2.0 * eta * t * z * poly_b)
