"""Casimir energy of constant-conductivity surfaces.

Two geometries are covered, both parameterized by the dimensionless
conductivity eta = 2*pi*sigma/c:

* two parallel sheets, E = hbar*c * Q^p(eta) / d^3 per unit area;
* a spherical shell, E = hbar*c * Q^s(eta) / R.

The planar interaction is always attractive; the shell energy changes
sign at eta ~ 1.578.
"""

from .constants import (ALPHA, ETA_CRITICAL, ETA_GRAPHENE, HBAR_C_EV_NM,
                        Q_PLANAR_PERFECT, Q_SPHERE_PERFECT)
from .planar import (EnergyValue, Eta, QValue, planar_energy,
                     planar_graphene_z, planar_small_eta_tm_slope,
                     q_planar_total, q_te_planar, q_tm_planar)
from .quadrature import QuadratureResult, ToleranceConfig
from .specfun import (BesselPair, UniformVariables, bessel_pair, product_dsde,
                      product_se, product_se_deriv)
from .sphere import (SphereQBreakdown, SumConfig, branch_log_inv,
                     branch_log_ratio, critical_eta, q_sphere_total,
                     q_te_sphere_as, q_te_sphere_num, q_tm_sphere_as,
                     q_tm_sphere_num, sphere_energy)

__version__ = "0.1.0"

__all__ = [
    "ALPHA", "ETA_CRITICAL", "ETA_GRAPHENE", "HBAR_C_EV_NM",
    "Q_PLANAR_PERFECT", "Q_SPHERE_PERFECT",
    "BesselPair", "EnergyValue", "Eta", "QValue", "QuadratureResult",
    "SphereQBreakdown", "SumConfig", "ToleranceConfig", "UniformVariables",
    "bessel_pair", "branch_log_inv", "branch_log_ratio", "critical_eta",
    "planar_energy", "planar_graphene_z", "planar_small_eta_tm_slope",
    "product_dsde", "product_se", "product_se_deriv",
    "q_planar_total", "q_sphere_total", "q_te_planar", "q_te_sphere_as",
    "q_te_sphere_num", "q_tm_planar", "q_tm_sphere_as", "q_tm_sphere_num",
    "sphere_energy",
]
