"""
A negative binomial law times a finite signed measure
=====================================================

Each level's law factors as the m = 0 negative binomial law convolved with a
signed measure on {0, ..., 2m}, symmetric about m.
"""

import numpy as np

from hyperbolic_gnbd import GnbdParams, convolve, decomposition_measure, pmf

nu, m, tau = 2.0, 1, 0.3
meas = decomposition_measure(nu, m, tau)
print("atoms:", {k: round(w, 10) for k, w in meas.atoms.items()})
print("mass:", meas.total_mass(), " total variation:", meas.total_variation())

target = pmf(GnbdParams(nu=nu, tau=tau, m=m))
base = pmf(GnbdParams(nu=nu, tau=tau, m=0), j_max=target.j_max)
rebuilt = convolve(base, meas)
err = max(abs(rebuilt[j] - w) for j, w in enumerate(target.weights))
print(f"p_0 rebuilt {rebuilt[0]:.12f}  direct {target.weights[0]:.12f}")
print(f"largest discrepancy over the pmf vector: {err:.2e}")

# A larger level; the measure alternates in sign.
meas = decomposition_measure(5.5, 3, 0.6)
print("signs for (5.5, 3, 0.6):", np.sign(meas.weights).astype(int))
