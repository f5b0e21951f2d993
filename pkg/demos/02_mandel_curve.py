"""
Anti-bunching radius per Landau level
=====================================

Q = Var/E - 1 changes sign at a critical intensity tau_crit; below it the
statistics are sub-Poissonian.  For nu = 5.5 the critical intensity grows
with the level index.
"""

from hyperbolic_gnbd import GnbdParams, mandel
from hyperbolic_gnbd.gnbd import critical_intensity

nu = 5.5
print(" m   tau_crit      rho")
for m in range(6):
    tc = critical_intensity(nu, m)
    print(f"{m:2d}  {tc:.8f}  {tc ** 0.5:.8f}")

# Sweep tau through the boundary for one level.
m = 3
tc = critical_intensity(nu, m)
for tau in (0.5 * tc, tc, tc + 0.5 * (1 - tc)):
    rep = mandel(GnbdParams(nu=nu, tau=tau, m=m))
    print(f"tau={tau:.5f}  Q={rep.q:+.3e}  {rep.regime.value}")
