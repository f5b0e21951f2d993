"""Identity checks run by ``hyperbolic-gnbd verify``.

Each check evaluates an identity the library relies on at a given
parameter set and compares the defect with its tolerance.  The report also
carries the constants resolved numerically where closed forms admit more
than one reading.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from ._tolerances import TOL
from .decomposition import convolve, decomposed_pmf, decomposition_measure, nbd_part, unit_centre_decomposition_measure
from .gnbd import GnbdParams, cf, mgf, pmf
from .idd import compound_poisson_spec, id_cf_closed, intensity, product_form_ratio
from .levy import (
    a1_closed,
    a1_series,
    a2_closed,
    a2_series,
    a3_closed,
    a_coeffs,
    alphas,
    lk_representation,
    product_identity,
    quasi_levy_component,
    resolve_nb_constant,
    tau_star,
)
from .specialfn import duplication_check


@dataclass(frozen=True)
class Check:
    name: str
    defect: float
    tolerance: float
    passed: bool
    note: str = ""


def _check(name: str, defect: float, tolerance: float, note: str = "") -> Check:
    return Check(name, float(defect), tolerance, bool(defect <= tolerance), note)


def run_verification(nu: float, m: int, tau: float, tol: float = TOL.measure_truncation) -> dict:
    params = GnbdParams(nu=nu, tau=tau, m=m)
    checks: list[Check] = []
    constants: dict[str, float | str] = {}

    checks.append(_check("duplication", max(duplication_check(x) for x in (0.5, 1.0, 10.0)), 1e-12))

    weights = pmf(params)
    checks.append(_check("normalization", abs(weights.total() + weights.tail_bound - 1), TOL.normalization))
    xi = np.concatenate([np.exp(2j * np.pi * np.arange(8) / 8), 0.5 * np.exp(2j * np.pi * (np.arange(8) + 0.5) / 8)])
    checks.append(_check("mgf_series", float(np.max(np.abs(mgf(params, xi) - weights.series(xi)))), TOL.mgf_series_abs))

    if 2 * nu > 2 * m:
        rebuilt = decomposed_pmf(nu, m, tau, weights.j_max)
        defect = max(abs(rebuilt[j] - w) for j, w in enumerate(weights.weights))
        checks.append(_check("decomposition", defect, TOL.decomposition_abs))
        unit_centre = convolve(nbd_part(nu, tau, weights.j_max), unit_centre_decomposition_measure(nu, m, tau))
        constants["central_atom"] = decomposition_measure(nu, m, tau)[m]
        constants["unit_centre_residual"] = max(abs(unit_centre[j] - w) for j, w in enumerate(weights.weights))

    resolution = resolve_nb_constant(nu, tau)
    constants["nb_measure_constant"] = resolution["constant"]
    constants["nb_measure_constant_choice"] = resolution["chosen"]
    checks.append(_check("nb_constant_resolution", resolution["error_two_nu"], TOL.lk_reproduction_abs))

    u = np.linspace(-math.pi, math.pi, 64)
    if m == 0:
        rep = lk_representation(params, tol)
        checks.append(_check("lk_reproduction", float(np.max(np.abs(rep.cf(u) - cf(params, u)))), TOL.lk_reproduction_abs))
        return _report(params, checks, constants)

    threshold = tau_star(nu, m)
    constants["tau_star"] = threshold
    checks.append(_check("product_identity", abs(product_identity(nu, m) - 1), TOL.product_identity))
    if tau >= threshold:
        checks.append(Check("lk_reproduction", float("nan"), TOL.lk_reproduction_abs, False, "tau >= tau_star"))
        return _report(params, checks, constants)

    A = a_coeffs(nu, tau, m)
    checks.append(_check("a1_identity", max(abs(a1_series(a) - a1_closed(a)) for a in A), TOL.levy_identity_abs))
    checks.append(
        _check(
            "a2_identity",
            max(abs(a2_series(a, s) - a2_closed(a, s)) for a in A for s in range(1, 9)),
            TOL.levy_identity_abs,
            "positive series; equals alpha(4A)^s / s",
        )
    )
    a3 = 0.0
    for a, al in zip(A, alphas(nu, tau, m)):
        comp = quasi_levy_component(float(al), 400)
        closed_1, closed_2 = a3_closed(a)
        a3 = max(a3, abs(comp.total_mass() - closed_1), abs(closed_1 - closed_2))
    checks.append(_check("a3_identity", a3, TOL.levy_identity_abs))

    rep = lk_representation(params, tol)
    checks.append(_check("lk_reproduction", float(np.max(np.abs(rep.cf(u) - cf(params, u)))), TOL.lk_reproduction_abs))
    constants["negative_atoms"] = len(rep.negative_atoms())

    spec = compound_poisson_spec(nu, tau, m, tol)
    checks.append(_check("id_cf_at_zero", abs(spec.cf(0.0) - 1), 1e-15))
    checks.append(_check("id_cf_closed_form", float(np.max(np.abs(spec.cf(u) - id_cf_closed(nu, tau, m, u)))), TOL.lk_reproduction_abs))
    ratio = product_form_ratio(nu, tau, m, u, tol)
    spread = float(np.max(np.abs(ratio - ratio[0])) / abs(ratio[0]))
    checks.append(_check("id_cf_product_form_ratio_constant", spread, TOL.product_form_ratio_rel))
    al = alphas(nu, tau, m)
    constants["product_form_ratio"] = float(ratio[0].real)
    constants["product_form_ratio_predicted"] = float(np.prod((1 - al) ** 2 / (1 + al) ** 2))
    constants["intensity_two_nu"] = intensity(nu, tau, m)
    constants["intensity_unit_constant"] = intensity(nu, tau, m, constant=1.0)
    checks.append(_check("intensity_vs_measure_mass", abs(spec.intensity - intensity(nu, tau, m)), max(tol, 1e-15)))
    return _report(params, checks, constants)


def _report(params: GnbdParams, checks: list[Check], constants: dict) -> dict:
    return {
        "params": asdict(params),
        "checks": [asdict(c) for c in checks],
        "constants": constants,
        "all_passed": all(c.passed for c in checks),
    }


__all__ = ["Check", "run_verification"]
