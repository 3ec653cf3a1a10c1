"""Casimir energy coefficient of two parallel constant-conductivity sheets.

The energy per unit area of two sheets separated by d is

    E = hbar*c * Q(eta) / d^3,

with eta = 2*pi*sigma/c the dimensionless conductivity.  Each
polarization contributes

    Q_pol = (1/4 pi^2) int_0^inf y^2 dy int_0^1 dx ln(1 - rho_pol^2 e^{-2y}),

where rho_tm = eta/(eta + x) and rho_te = eta*x/(1 + eta*x).  The
perfect conductor (eta = inf) is evaluated on a dedicated path with
rho = 1 exactly, which collapses the x integral.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .constants import HBAR_C_EV_NM, LENGTH_UNITS_NM, ZETA_R_3
from .quadrature import ToleranceConfig, integrate_finite, integrate_semi_infinite

_FOUR_PI_SQ = 4.0 * math.pi**2

# default tolerance for the planar double integrals; tight enough that
# the perfect-conductor checks hold to 1e-8 relative
PLANAR_TOL = ToleranceConfig(abs_tol=1e-12, rel_tol=1e-10, max_evals=400_000)


@dataclass(frozen=True)
class Eta:
    """Dimensionless conductivity eta = 2*pi*sigma/c; math.inf marks a
    perfect conductor."""

    value: float

    def __post_init__(self):
        v = self.value
        if math.isnan(v) or v < 0:
            raise ValueError(f"eta must be >= 0 or inf, got {v}")

    @property
    def is_perfect(self):
        return math.isinf(self.value)

    @classmethod
    def parse(cls, text):
        """Parse a command-line token; 'inf' selects the perfect conductor."""
        t = str(text).strip().lower()
        if t in ("inf", "infinity"):
            return cls(math.inf)
        try:
            return cls(float(t))
        except ValueError as exc:
            raise ValueError(f"cannot parse eta from {text!r}") from exc


def as_eta(eta):
    """Coerce a float or Eta to Eta."""
    return eta if isinstance(eta, Eta) else Eta(float(eta))


@dataclass(frozen=True)
class QValue:
    """A dimensionless Q result with error estimate and provenance."""

    value: float
    abs_error: float
    parts: dict | None = None
    diagnostics: dict = field(default_factory=dict)
    converged: bool = True

    def __add__(self, other):
        parts = None
        if self.parts is not None or other.parts is not None:
            parts = {**(self.parts or {}), **(other.parts or {})}
        diag = dict(self.diagnostics)
        diag["evals"] = self.diagnostics.get("evals", 0) + other.diagnostics.get("evals", 0)
        return QValue(
            value=self.value + other.value,
            abs_error=self.abs_error + other.abs_error,
            parts=parts,
            diagnostics=diag,
            converged=self.converged and other.converged,
        )


@dataclass(frozen=True)
class EnergyValue:
    """Physical energy assembled from a QValue and a geometry."""

    q: QValue
    geometry: dict
    energy: float
    unit: str


def _zero_q():
    return QValue(value=0.0, abs_error=0.0, diagnostics={"evals": 0})


def _q_perfect_per_mode(tol):
    """(1/4 pi^2) int_0^inf y^2 ln(1 - e^{-2y}) dy = -pi^2/1440 per mode."""

    def f(y):
        y = np.asarray(y, dtype=float)
        return y * y * np.log1p(-np.exp(-2.0 * y))

    r = integrate_semi_infinite(f, tol)
    return QValue(
        value=r.value / _FOUR_PI_SQ,
        abs_error=r.abs_error / _FOUR_PI_SQ,
        diagnostics={"evals": r.evals},
        converged=r.converged,
    )


def _q_mode(eta, mode, tol):
    """Nested quadrature for one polarization at finite eta."""
    inner_tol = ToleranceConfig(
        abs_tol=tol.abs_tol / 10.0, rel_tol=tol.rel_tol / 10.0, max_evals=30_000
    )
    inner_evals = [0]
    inner_ok = [True]

    def outer(y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.empty_like(y)
        for i, yy in enumerate(y):
            e2y = math.exp(-2.0 * yy) if yy < 350.0 else 0.0

            def inner(x):
                if mode == "tm":
                    rho = eta / (eta + x)
                else:
                    rho = eta * x / (1.0 + eta * x)
                return np.log1p(-rho * rho * e2y)

            r = integrate_finite(inner, 0.0, 1.0, inner_tol)
            inner_evals[0] += r.evals
            inner_ok[0] = inner_ok[0] and r.converged
            out[i] = yy * yy * r.value
        return out

    r = integrate_semi_infinite(outer, tol)
    return QValue(
        value=r.value / _FOUR_PI_SQ,
        abs_error=r.abs_error / _FOUR_PI_SQ,
        diagnostics={"evals": r.evals + inner_evals[0]},
        converged=r.converged and inner_ok[0],
    )


def q_tm_planar(eta, tol=PLANAR_TOL):
    """Transverse-magnetic Q for two parallel sheets; always <= 0."""
    eta = as_eta(eta)
    if eta.value == 0.0:
        return _zero_q()
    if eta.is_perfect:
        return _q_perfect_per_mode(tol)
    return _q_mode(eta.value, "tm", tol)


def q_te_planar(eta, tol=PLANAR_TOL):
    """Transverse-electric Q for two parallel sheets; always <= 0."""
    eta = as_eta(eta)
    if eta.value == 0.0:
        return _zero_q()
    if eta.is_perfect:
        return _q_perfect_per_mode(tol)
    return _q_mode(eta.value, "te", tol)


def q_planar_total(eta, tol=PLANAR_TOL):
    """Total planar Q = Q_tm + Q_te with a per-mode breakdown."""
    tm = q_tm_planar(eta, tol)
    te = q_te_planar(eta, tol)
    total = tm + te
    return QValue(
        value=total.value,
        abs_error=total.abs_error,
        parts={"tm": tm.value, "te": te.value},
        diagnostics=total.diagnostics,
        converged=total.converged,
    )


# bracket constant of the small-eta TM expansion:
#   Q_tm ~ -eta/(4 pi^2) * (4 ln 2 - pi^2/6 - pi^4/360 - zeta(3)/2)
_SMALL_ETA_TM_BRACKET = (
    4.0 * math.log(2.0) - math.pi**2 / 6.0 - math.pi**4 / 360.0 - ZETA_R_3 / 2.0
)


def planar_small_eta_tm_slope():
    """d(Q_tm)/d(eta) at eta -> 0; approximately -0.0064870."""
    return -_SMALL_ETA_TM_BRACKET / _FOUR_PI_SQ


def planar_graphene_z():
    """The coefficient Z in Q_tm(eta_gr) = -alpha*Z/(32 pi); Z ~ 1.024."""
    return 4.0 * _SMALL_ETA_TM_BRACKET


def planar_energy(eta, d, unit="natural", tol=PLANAR_TOL):
    """Energy per unit area of the two-sheet system.

    d is the separation in nanometers.  unit 'natural' returns the
    dimensionless Q (energy in units of hbar*c/d^3); 'eV' returns
    eV/nm^2 using hbar*c = 197.3269804 eV nm.
    """
    if d <= 0:
        raise ValueError("separation d must be positive")
    q = q_planar_total(eta, tol)
    if unit == "natural":
        energy = q.value
    elif unit == "eV":
        energy = HBAR_C_EV_NM * q.value / d**3
    else:
        raise ValueError(f"unknown unit {unit!r}; use 'natural' or 'eV'")
    return EnergyValue(q=q, geometry={"separation_nm": d}, energy=energy, unit=unit)


def parse_length_nm(text):
    """Parse '100nm', '1.5um', ... into nanometers."""
    t = str(text).strip()
    for suffix in sorted(LENGTH_UNITS_NM, key=len, reverse=True):
        if t.endswith(suffix):
            num = t[: -len(suffix)]
            try:
                value = float(num)
            except ValueError:
                break
            if value <= 0:
                raise ValueError(f"length must be positive, got {text!r}")
            return value * LENGTH_UNITS_NM[suffix]
    raise ValueError(f"cannot parse length {text!r}; expected e.g. 100nm, 2um")
