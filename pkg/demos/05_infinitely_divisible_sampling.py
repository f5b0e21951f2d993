"""
The compound Poisson law and its sample paths
=============================================

Replacing the signed measure by its total variation yields a genuine Levy
measure: a compound Poisson law with drift m.  Draws are reproducible from
an integer seed.
"""

import math

import numpy as np

from hyperbolic_gnbd import compound_poisson_spec, id_cf, sample_compound_poisson, simulate_path

nu, m, tau = 2.0, 1, 0.05
spec = compound_poisson_spec(nu, tau, m)
print(f"intensity {spec.intensity:.12f}, drift {spec.drift}")
print(f"mean {spec.mean():.6f}, variance {spec.variance():.6f}")

draws = sample_compound_poisson(spec, 1.0, seed=7, size=100_000)
print(f"empirical mean {draws.mean():.4f} +/- {draws.std() / math.sqrt(draws.size):.4f}")

u = np.linspace(-math.pi, math.pi, 9)
empirical = np.exp(1j * np.multiply.outer(u, draws)).mean(axis=1)
print("largest cf gap:", np.max(np.abs(empirical - id_cf(nu, tau, m, u))))

# The square root of the law: halve intensity and drift.
half = spec.divide(2)
print("root squared vs law at u=1:", half.cf(1.0) ** 2, id_cf(nu, tau, m, 1.0))

path = simulate_path(spec, horizon=5.0, n_steps=5, seed=7)
print(path.to_csv())
