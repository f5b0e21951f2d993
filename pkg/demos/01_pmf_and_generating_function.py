"""
Photon-number law of a hyperbolic Landau level
==============================================

The level m of a disc with magnetic field nu carries a discrete law on
j = 0, 1, 2, ...  whose intensity parameter is tau = |z|^2.
"""

import numpy as np

from hyperbolic_gnbd import GnbdParams, mgf, moments, pmf

params = GnbdParams(nu=2.0, tau=0.3, m=1)
law = pmf(params)
print(f"kept {law.j_max + 1} weights, omitted tail below {law.tail_bound:.1e}")
print("first weights:", np.round(law.weights[:6], 6))
print("total mass:", law.total())

# The closed-form generating function agrees with the truncated series
# anywhere in the closed unit disc.
xi = np.exp(2j * np.pi * np.arange(4) / 4)
print("closed form:", np.round(mgf(params, xi), 12))
print("series     :", np.round(law.series(xi), 12))

# Mean and variance from the closed forms against the weights themselves.
mean, var = moments(params)
print(f"mean {mean:.9f} (weights {law.moment(1):.9f})")
print(f"variance {var:.9f} (weights {law.moment(2) - law.moment(1) ** 2:.9f})")

# m = 0 is the ordinary negative binomial law.
nbd = pmf(GnbdParams(nu=2.0, tau=0.3, m=0))
print("negative binomial p_0 = (1 - tau)^(2 nu):", nbd.weights[0], 0.7**4)
