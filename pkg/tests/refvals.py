"""Frozen reference values for the test suite.

Every number here was computed independently of the package (mpmath at 30
significant digits, or closed forms evaluated in high precision) and is
used as an oracle; nothing in this file is derived from package output.
"""

import math

# log Gamma
LOG_GAMMA_HALF = 0.57236494292470009  # log sqrt(pi)
LOG_GAMMA_10 = 12.80182748008147  # log 9!
LOG_GAMMA_RATIO_95_9 = 1.0847305180520183  # log(Gamma(9.5)/Gamma(9))

# Gauss hypergeometric closed forms
HYP_ARCSIN = 1.0471975511965977  # 2F1(1/2,1/2;3/2;1/4) = arcsin(1/2)/(1/2) = pi/3
HYP_LOG = 1.3862943611198906  # 2F1(1,1;2;1/2) = -log(1/2)/(1/2) = 2 log 2

# complete Bell numbers B_0..B_8
BELL_NUMBERS = [1, 1, 2, 5, 15, 52, 203, 877, 4140]

# spherical limit c.g.f. and 1/n coefficients at lam = 1
L_SPH_AT_1 = 0.37742807622009312
CORR_CENTERED_AT_1 = 0.31945825948088008
CORR_KNOWN_AT_1 = 0.078852346951078354

R0_AT_1 = 0.61803398874989485  # (sqrt(5)-1)/2

# saddle data
RATE_SPH_AT_HALF = 0.14384103622589046  # -log(3/4)/2
GAUSS_LAMBDA_03_06 = 0.57164634146341463  # c/(1-c^2) - rho/(1-rho c) at (0.3, 0.6)
GAUSS_RATE_03_06 = 0.071847952325992164

RHO_CONVEXITY = 0.84748658561247083  # sqrt(3 + 2 sqrt(3))/3

# tails at n = 20, c = 0.5 (quadrature of the exact densities, mpmath)
TAIL_EXACT_CENT_20_05 = 0.012384779402054846
TAIL_SLD_CENT_20_05 = 0.013396039954465864  # (1-c^2)^{(n-2)/2} / (c sqrt(2 pi n))
TAIL_EXACT_KNOWN_20_05 = 0.010495752335082406
TAIL_SLD_KNOWN_20_05 = 0.011601310910678773  # (1-c^2)^{(n-1)/2} / (c sqrt(2 pi n))

# density log-constant of the centered law at r = 0, n = 20
LOG_DENS_CENT_20_AT_0 = LOG_GAMMA_RATIO_95_9 - LOG_GAMMA_HALF

# Bahadur
SLOPE_AT_HALF = 0.28768207245178093  # -log(3/4)
KL_AT_HALF = 0.14384103622589046

SQRT_2PI = math.sqrt(2.0 * math.pi)
