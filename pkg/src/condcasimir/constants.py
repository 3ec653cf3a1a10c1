"""Named physical and mathematical constants used throughout the package.

All energies are expressed through dimensionless Q coefficients; the
constants below are only needed for unit conversion and for the fixed
reference values of the two geometries.
"""

import math

# hbar*c in eV*nm (CODATA 2018)
HBAR_C_EV_NM = 197.3269804

# fine-structure constant
ALPHA = 1.0 / 137.035999

# dimensionless conductivity of a graphene sheet, eta = 2*pi*sigma/c with
# sigma = e^2/(4*hbar), i.e. eta = pi*alpha/2
ETA_GRAPHENE = math.pi * ALPHA / 2.0

# Hurwitz zeta values entering the closed-form tail assembly
ZETA_H_M2_3HALF = -0.25       # zeta_H(-2, 3/2)
ZETA_H_0_3HALF = -1.0         # zeta_H(0, 3/2)

# Riemann zeta(3)
ZETA_R_3 = 1.2020569031595943

# reference Q values, perfect conductor
Q_PLANAR_PERFECT = -math.pi**2 / 720.0          # both polarizations
Q_PLANAR_PERFECT_PER_MODE = -math.pi**2 / 1440.0
Q_TE_SPHERE_TAIL_PERFECT = 17.0 / 128.0
Q_TM_SPHERE_TAIL_PERFECT = -11.0 / 128.0

# sphere total for a perfectly conducting shell (Boyer coefficient)
Q_SPHERE_PERFECT = 0.04618

# conductivity at which the spherical-shell energy changes sign
ETA_CRITICAL = 1.578

# length units in nanometers
LENGTH_UNITS_NM = {
    "nm": 1.0,
    "um": 1.0e3,
    "mm": 1.0e6,
    "m": 1.0e9,
}
