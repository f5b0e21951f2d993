"""Generalized negative binomial distributions of hyperbolic Landau levels.

Submodules
----------
specialfn      Gamma/Pochhammer, Jacobi and Laguerre polynomials, zeros, pFq
gnbd           pmf, generating function, moments, Mandel statistics
decomposition  negative binomial * finite signed measure decomposition
levy           quasi-Levy measures and the Levy-Khintchine representation
idd            the associated infinitely divisible (compound Poisson) law
"""

from .decomposition import SignedAtomicMeasure, convolve, decomposition_measure, q_poly
from .errors import ConvergenceError, DomainError
from .gnbd import GnbdParams, MandelReport, Regime, TruncatedPmf, cf, mandel, mgf, moments, pmf
from .idd import CompoundPoissonSpec, compound_poisson_spec, id_cf, sample_compound_poisson, simulate_path
from .levy import LevyRepresentation, lk_representation, tau_star

__version__ = "0.1.0"

__all__ = [
    "CompoundPoissonSpec",
    "ConvergenceError",
    "DomainError",
    "GnbdParams",
    "LevyRepresentation",
    "MandelReport",
    "Regime",
    "SignedAtomicMeasure",
    "TruncatedPmf",
    "cf",
    "compound_poisson_spec",
    "convolve",
    "decomposition_measure",
    "id_cf",
    "lk_representation",
    "mandel",
    "mgf",
    "moments",
    "pmf",
    "q_poly",
    "sample_compound_poisson",
    "simulate_path",
    "tau_star",
]
