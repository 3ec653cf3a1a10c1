"""Casimir energy coefficient of a constant-conductivity spherical shell.

The energy of a shell of radius R is E = hbar*c * Q^s(eta) / R.  For
each polarization Q splits into a closed-form part (from the uniform
large-order expansion of the mode sum) and a small numeric remainder

    Q_pol = Q_pol_as(eta) + Q_pol_num(eta),

where the numeric part is a rapidly converging sum over multipole
orders l >= 1 of subtracted z-integrals.  The closed forms are written
through the two branch helpers L(eta) and Li(eta) so a single real
expression covers eta below and above 1.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import brentq
from scipy.special import zeta as _hurwitz_zeta

from . import specfun as sf
from .constants import HBAR_C_EV_NM
from .planar import Eta, QValue, as_eta, EnergyValue
from .quadrature import ToleranceConfig, integrate_finite

# Taylor coefficients of the branch helpers about eta = 1, in powers of
# (eta - 1); both branches continue the same analytic function
_LR_NEAR_ONE = (1.0, -1.0 / 3.0, 2.0 / 15.0, -2.0 / 35.0,
                8.0 / 315.0, -8.0 / 693.0, 16.0 / 3003.0)
_LI_NEAR_ONE = (1.0, -2.0 / 3.0, 7.0 / 15.0, -12.0 / 35.0,
                83.0 / 315.0, -146.0 / 693.0, 523.0 / 3003.0)

# window around eta = 1 where the raw branch formulas lose digits
_BRANCH_WINDOW = 1e-4


def branch_log_ratio(eta):
    """L(eta) = ln(eta + sqrt(eta^2-1))/sqrt(eta^2-1), continued through
    eta < 1 as arccos(eta)/sqrt(1-eta^2); L(1) = 1."""
    eta = float(eta)
    if not eta > 0 or math.isinf(eta):
        raise ValueError(f"branch_log_ratio requires 0 < eta < inf, got {eta}")
    d = eta - 1.0
    if abs(d) < _BRANCH_WINDOW:
        return sum(c * d**k for k, c in enumerate(_LR_NEAR_ONE))
    if eta > 1.0:
        g = math.sqrt(eta * eta - 1.0)
        return math.log(eta + g) / g
    g = math.sqrt(1.0 - eta * eta)
    return math.acos(eta) / g


def branch_log_inv(eta):
    """Li(eta) = ln((1 + sqrt(1-eta^2))/eta)/sqrt(1-eta^2), continued
    through eta > 1 as arccos(1/eta)/sqrt(eta^2-1); Li(1) = 1."""
    eta = float(eta)
    if not eta > 0 or math.isinf(eta):
        raise ValueError(f"branch_log_inv requires 0 < eta < inf, got {eta}")
    d = eta - 1.0
    if abs(d) < _BRANCH_WINDOW:
        return sum(c * d**k for k, c in enumerate(_LI_NEAR_ONE))
    if eta < 1.0:
        g = math.sqrt(1.0 - eta * eta)
        return math.log((1.0 + g) / eta) / g
    g = math.sqrt(eta * eta - 1.0)
    return math.acos(1.0 / eta) / g


# small-eta expansion of the closed-form TE part: the raw formula has a
# 1/eta^4 prefactor whose leading terms cancel, so below the switch
# point the series (coefficients of eta^1..eta^13) is used instead
_TE_AS_SMALL_ETA = (
    1.0 / (4.0 * math.pi),
    -15.0 / 256.0,
    31.0 / (210.0 * math.pi),
    -81.0 / 2048.0,
    34.0 / (315.0 * math.pi),
    -125.0 / 4096.0,
    20.0 / (231.0 * math.pi),
    -413.0 / 16384.0,
    3296.0 / (45045.0 * math.pi),
    -711.0 / 32768.0,
    64.0 / (1001.0 * math.pi),
    -10065.0 / 524288.0,
    4864.0 / (85085.0 * math.pi),
)
_TE_AS_SWITCH = 0.12


def q_te_sphere_as(eta):
    """Closed-form part of the TE shell coefficient; positive, tends to
    17/128 as eta -> inf and to eta/(4 pi) as eta -> 0."""
    eta = as_eta(eta)
    if eta.value == 0.0:
        return 0.0
    if eta.is_perfect:
        return 17.0 / 128.0
    e = eta.value
    if e < _TE_AS_SWITCH:
        acc = 0.0
        for c in reversed(_TE_AS_SMALL_ETA):
            acc = acc * e + c
        return acc * e
    lr = branch_log_ratio(e)
    e2 = e * e
    return (17.0 / 128.0 - 1.0 / (12.0 * math.pi * e) + 3.0 / (32.0 * e2)
            + 5.0 / (8.0 * math.pi * e2 * e) - 5.0 / (16.0 * e2 * e2)
            + (5.0 - 4.0 * e2 - 2.0 * e2 * e2) / (8.0 * math.pi * e2 * e2) * lr)


# large-eta expansion of the closed-form TM part: the raw formula is a
# small residue of O(eta^4) pieces, so above the switch point the
# series (coefficients of eta^0..eta^-23) is used instead
_TM_AS_LARGE_ETA = (
    -11.0 / 128.0,
    1.0 / (5.0 * math.pi),
    -13.0 / 256.0,
    2.0 / (15.0 * math.pi),
    -75.0 / 2048.0,
    32.0 / (315.0 * math.pi),
    -119.0 / 4096.0,
    32.0 / (385.0 * math.pi),
    -399.0 / 16384.0,
    640.0 / (9009.0 * math.pi),
    -693.0 / 32768.0,
    256.0 / (4095.0 * math.pi),
    -9867.0 / 524288.0,
    2048.0 / (36465.0 * math.pi),
    -17875.0 / 1048576.0,
    8192.0 / (159885.0 * math.pi),
    -65637.0 / 4194304.0,
    32768.0 / (692835.0 * math.pi),
    -121771.0 / 8388608.0,
    327680.0 / (7436429.0 * math.pi),
    -911183.0 / 67108864.0,
    2097152.0 / (50702925.0 * math.pi),
    -1716099.0 / 134217728.0,
    1048576.0 / (26842725.0 * math.pi),
)
_TM_AS_SWITCH = 4.0


def q_tm_sphere_as(eta):
    """Closed-form part of the TM shell coefficient; negative, tends to
    -11/128 as eta -> inf and to -5 eta/(12 pi) as eta -> 0."""
    eta = as_eta(eta)
    if eta.value == 0.0:
        return 0.0
    if eta.is_perfect:
        return -11.0 / 128.0
    e = eta.value
    if e > _TM_AS_SWITCH:
        u = 1.0 / e
        acc = 0.0
        for c in reversed(_TM_AS_LARGE_ETA):
            acc = acc * u + c
        return acc
    li = branch_log_inv(e)
    e2 = e * e
    return (-(e / (96.0 * math.pi))
            * (4.0 * (10.0 - 21.0 * e2) - 3.0 * math.pi * e * (9.0 - 14.0 * e2))
            - (e2 * e / (8.0 * math.pi)) * (8.0 - 7.0 * e2) * li)


@dataclass(frozen=True)
class SumConfig:
    """Truncation policy for the multipole sums."""

    l_max: int = 60
    tail_points: int = 15       # trailing terms used for the power-law tail fit
    target_tol: float = 1e-6    # absolute error budget for the whole sum

    def __post_init__(self):
        if self.l_max < 5:
            raise ValueError("l_max must be at least 5")
        if not 3 <= self.tail_points <= self.l_max - 1:
            raise ValueError("tail_points must lie in [3, l_max-1]")
        if self.target_tol <= 0:
            raise ValueError("target_tol must be positive")


def _mode_integrand(l, eta, pol):
    """Subtracted z-integrand of one multipole term.

    The exact log-derivative of the mode function is reduced by the
    leading and next-to-leading uniform-asymptotic kernels so the term
    decays like nu^-2 and each integral converges like z^-3.
    """
    nu = l + 0.5
    cc = 1.0 - 1.0 / (4.0 * nu * nu)  # = l(l+1)/nu^2

    def fz(z):
        z = np.asarray(z, dtype=float)
        x = nu * z
        uv = sf.UniformVariables.from_order(l, z)
        if pol == "te":
            p, dp, _ = sf._se_combinations(l, x)
            f0 = sf.debye_f0_te(uv, eta)
            f2 = sf.debye_f2_te(uv, eta)
            if math.isinf(eta):
                main = nu * dp / p
            else:
                main = 2.0 * eta * nu * dp / (1.0 + 2.0 * eta * p)
            return z * (main - f0 - f2 / (nu * nu))
        p, dp, dsde = sf._se_combinations(l, x)
        ker = sf.debye_kernel_tm(uv, eta)
        if math.isinf(eta):
            main = (1.0 + cc / (z * z)) * z * nu * dp / dsde
        else:
            main = -2.0 * (1.0 + cc / (z * z)) * eta * z * nu * dp / (
                1.0 - 2.0 * eta * dsde)
        return main + ker

    return fz


def _term_integral(l, eta, pol, abs_tol):
    """One multipole z-integral over [0, inf) by geometric blocks.

    Blocks [0,1], [1,2], [2,4], ... are summed until a block falls
    below the per-term budget; far blocks decay like 4^-k so the first
    omitted block bounds the truncation error up to a factor ~1/3.
    """
    fz = _mode_integrand(l, eta, pol)
    tol = ToleranceConfig(abs_tol=abs_tol / 4.0, rel_tol=1e-9, max_evals=3000)
    total = 0.0
    err = 0.0
    evals = 0
    blk = 0.0
    a, b = 0.0, 1.0
    for k in range(14):
        r = integrate_finite(fz, a, b, tol)
        total += r.value
        err += r.abs_error
        evals += r.evals
        blk = abs(r.value)
        a, b = b, 2.0 * b
        if k >= 3 and blk < abs_tol / 4.0:
            break
    err += blk / 3.0
    return total, err, evals


def _q_sphere_num(eta, pol, cfg):
    """Multipole sum for one polarization's numeric remainder."""
    eta = as_eta(eta)
    if eta.value == 0.0:
        return QValue(value=0.0, abs_error=0.0,
                      diagnostics={"l_max_used": 0, "evals": 0})
    ev = eta.value
    l_max = cfg.l_max
    terms = []
    err = 0.0
    evals = 0
    for l in range(1, l_max + 1):
        nu = l + 0.5
        atol = math.pi * cfg.target_tol / (l_max * nu * nu)
        v, e, n = _term_integral(l, ev, pol, atol)
        terms.append(-nu * nu * v / math.pi)
        err += nu * nu * e / math.pi
        evals += n
    total = math.fsum(terms)
    # power-law remainder: fit |a_l| ~ A nu^-p on the trailing terms,
    # then sum the fitted tail with the Hurwitz zeta function
    npts = cfg.tail_points
    nus = np.arange(l_max - npts + 1, l_max + 1) + 0.5
    mags = np.abs(terms[-npts:])
    tail = 0.0
    decay = math.inf
    if np.all(mags > 0.0):
        slope, intercept = np.polyfit(np.log(nus), np.log(mags), 1)
        decay = -slope
        if decay > 1.0:
            amp = math.exp(intercept)
            tail = (amp * _hurwitz_zeta(decay, l_max + 1.5)
                    * math.copysign(1.0, terms[-1]))
    return QValue(
        value=total + tail,
        abs_error=err + abs(tail),
        diagnostics={"l_max_used": l_max, "evals": evals, "tail_decay": decay},
    )


def q_te_sphere_num(eta, cfg=SumConfig()):
    """Numeric remainder of the TE shell coefficient."""
    return _q_sphere_num(eta, "te", cfg)


def q_tm_sphere_num(eta, cfg=SumConfig()):
    """Numeric remainder of the TM shell coefficient."""
    return _q_sphere_num(eta, "tm", cfg)


@dataclass(frozen=True)
class SphereQBreakdown:
    """The four additive parts of the shell coefficient Q^s."""

    eta: Eta
    te_as: float
    te_num: float
    tm_as: float
    tm_num: float
    total: float
    abs_error: float
    diagnostics: dict

    @property
    def te(self):
        return self.te_as + self.te_num

    @property
    def tm(self):
        return self.tm_as + self.tm_num


def q_sphere_total(eta, cfg=SumConfig()):
    """Full shell coefficient with TE/TM asymptotic/numeric breakdown."""
    eta = as_eta(eta)
    te_as = q_te_sphere_as(eta)
    tm_as = q_tm_sphere_as(eta)
    te_num = q_te_sphere_num(eta, cfg)
    tm_num = q_tm_sphere_num(eta, cfg)
    return SphereQBreakdown(
        eta=eta,
        te_as=te_as,
        te_num=te_num.value,
        tm_as=tm_as,
        tm_num=tm_num.value,
        total=te_as + te_num.value + tm_as + tm_num.value,
        abs_error=te_num.abs_error + tm_num.abs_error,
        diagnostics={
            "evals": te_num.diagnostics["evals"] + tm_num.diagnostics["evals"],
            "l_max_used": cfg.l_max,
            "converged": te_num.converged and tm_num.converged,
        },
    )


def critical_eta(cfg=SumConfig(), root_tol=1e-3, bracket=(1.0, 2.0)):
    """Conductivity at which the shell energy changes sign.

    The root of Q^s(eta) is bracketed on [1, 2] (negative below,
    positive above) and refined with Brent's method.
    """
    lo, hi = bracket
    q_lo = q_sphere_total(lo, cfg).total
    q_hi = q_sphere_total(hi, cfg).total
    if not (q_lo < 0.0 < q_hi):
        raise ValueError(
            f"no sign change on [{lo}, {hi}]: Q({lo})={q_lo:.3g}, Q({hi})={q_hi:.3g}")
    return brentq(lambda e: q_sphere_total(e, cfg).total, lo, hi, xtol=root_tol)


def sphere_energy(eta, radius, unit="natural", cfg=SumConfig()):
    """Energy of the shell: E = hbar*c * Q^s / R.

    radius in nanometers; unit 'natural' returns the dimensionless Q,
    'eV' converts with hbar*c = 197.3269804 eV nm.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    bd = q_sphere_total(eta, cfg)
    q = QValue(
        value=bd.total,
        abs_error=bd.abs_error,
        parts={"te_as": bd.te_as, "te_num": bd.te_num,
               "tm_as": bd.tm_as, "tm_num": bd.tm_num},
        diagnostics=bd.diagnostics,
        converged=bool(bd.diagnostics.get("converged", True)),
    )
    if unit == "natural":
        energy = q.value
    elif unit == "eV":
        energy = HBAR_C_EV_NM * q.value / radius
    else:
        raise ValueError(f"unknown unit {unit!r}; use 'natural' or 'eV'")
    return EnergyValue(q=q, geometry={"radius_nm": radius}, energy=energy, unit=unit)
