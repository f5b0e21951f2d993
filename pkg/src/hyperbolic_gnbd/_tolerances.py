"""Numerical tolerances shared by the library, the CLI and the test-suite."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    log_gamma_rel: float = 1e-13
    jacobi_routes_rel: float = 1e-11
    jacobi_symmetry_rel: float = 1e-11
    index_swap_rel: float = 1e-10
    zero_reconstruction_rel: float = 1e-9
    q_poly_rel: float = 1e-10
    normalization: float = 1e-9
    mgf_series_abs: float = 1e-10
    srivastava_rao_abs: float = 1e-8
    moments_rel: float = 1e-8
    mandel_q: float = 1e-12
    regime_boundary: float = 1e-10
    decomposition_abs: float = 1e-10
    linearization_abs: float = 1e-11
    product_identity: float = 1e-12
    levy_identity_abs: float = 1e-10
    lk_reproduction_abs: float = 1e-8
    a0_abs: float = 1e-10
    measure_truncation: float = 1e-12
    product_form_ratio_rel: float = 1e-9
    divisibility_abs: float = 1e-10
    # auto-truncation of the pmf: last weight times 1/(1 - sqrt(tau)) below this
    pmf_tail: float = 1e-15
    negative_roundoff: float = 1e-14


TOL = Tolerances()
