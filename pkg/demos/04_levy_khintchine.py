"""
Levy-Khintchine form with a signed measure
==========================================

Below the threshold tau* the characteristic function has no zeros and is
the exponential of a Levy exponent whose measure has negative atoms when
m >= 1.  The law is then quasi-infinitely divisible but not infinitely
divisible.
"""

import math

import numpy as np

from hyperbolic_gnbd import GnbdParams, cf, lk_representation, tau_star

u = np.linspace(-math.pi, math.pi, 64)
# m = 0 has no threshold; the others sit at 90% of theirs
cases = [(2.0, 0, 0.3)] + [(nu, m, 0.9 * tau_star(nu, m)) for nu, m in [(2.0, 1), (3.5, 2), (5.5, 3)]]
for nu, m, tau in cases:
    p = GnbdParams(nu=nu, tau=tau, m=m)
    rep = lk_representation(p)
    err = np.max(np.abs(rep.cf(u) - cf(p, u)))
    neg = rep.negative_atoms()
    print(f"nu={nu} m={m} tau={p.tau:.5f}  drift={rep.drift}  cf error {err:.1e}  negative atoms: {len(neg)}")
    if neg:
        k, w = min(neg.items(), key=lambda kv: kv[1])
        print(f"    most negative atom at {k}: {w:.3e}")

print("tau*(2, 1) =", tau_star(2.0, 1))
