"""Quasi-infinite divisibility of the GNBD: the non-vanishing threshold for
its characteristic function, the quasi-Levy measures and the resulting
Levy-Khintchine representation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from ._tolerances import TOL
from .decomposition import SignedAtomicMeasure
from .errors import ConvergenceError, DomainError
from .gnbd import GnbdParams, cf
from .specialfn import jacobi_zeros, pochhammer

__all__ = [
    "LevyRepresentation",
    "NonvanishingReport",
    "smallest_zero",
    "tau_star",
    "a_coeffs",
    "alpha",
    "alphas",
    "nb_measure_constant",
    "resolve_nb_constant",
    "nb_levy_measure",
    "quasi_levy_component",
    "quasi_levy_measure",
    "lk_representation",
    "a0_product",
    "cf_nonvanishing_check",
    "product_identity",
    "a1_series",
    "a1_closed",
    "a2_series",
    "a2_closed",
    "a3_closed",
]


def _zeros(nu: float, m: int) -> np.ndarray:
    if m < 1 or m != int(m):
        raise DomainError(f"m must be a positive integer, got {m!r}")
    a = 2 * nu - 2 * m - 1
    if not a > -1:
        raise DomainError(f"need nu > m for real zeros in (-1, 1), got nu={nu!r}, m={m}")
    return jacobi_zeros(int(m), a, 0.0).zeros


def smallest_zero(nu: float, m: int) -> float:
    """Smallest zero of ``P_m^{(2nu-2m-1, 0)}``."""
    return float(_zeros(nu, m)[0])


def tau_star(nu: float, m: int) -> float:
    """Largest intensity for which the characteristic function cannot vanish:
    ``(sqrt(2) - sqrt(1 - x_1)) / (sqrt(2) + sqrt(1 - x_1))``."""
    r = math.sqrt(1 - smallest_zero(nu, m))
    return (math.sqrt(2) - r) / (math.sqrt(2) + r)


def _require_below_threshold(nu: float, tau: float, m: int) -> np.ndarray:
    zeros = _zeros(nu, m)
    r = math.sqrt(1 - zeros[0])
    threshold = (math.sqrt(2) - r) / (math.sqrt(2) + r)
    if not 0 < tau < threshold:
        raise DomainError(
            f"tau={tau!r} is not below the non-vanishing threshold {threshold!r} for nu={nu!r}, m={m};"
            " the characteristic function may vanish and has no Levy-Khintchine representation"
        )
    return zeros


def a_coeffs(nu: float, tau: float, m: int) -> np.ndarray:
    """``A_n = tau (1 - x_n) / ((1 + x_n)(1 - tau)^2)`` for ``n = 1..m``;
    each lies in ``(0, 1/4)`` below the threshold."""
    x = _require_below_threshold(nu, tau, m)
    return tau * (1 - x) / ((1 + x) * (1 - tau) ** 2)


def alpha(x):
    """``x / (1 + sqrt(1 - x))^2`` on ``[0, 1]``."""
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0) | (xa > 1)):
        raise DomainError("alpha is defined on [0, 1]")
    return (xa / (1 + np.sqrt(1 - xa)) ** 2)[()]


def alphas(nu: float, tau: float, m: int) -> np.ndarray:
    """``alpha(4 A_n)`` for ``n = 1..m``."""
    return np.atleast_1d(alpha(4 * a_coeffs(nu, tau, m)))


def nb_measure_constant(nu: float) -> float:
    """Weight multiplier of the negative binomial Levy measure
    ``c sum_j tau^j/j delta_j``.  Expanding ``log((1-tau)/(1-tau e^{iu}))^{2nu}``
    gives ``c = 2 nu``; :func:`resolve_nb_constant` re-derives it numerically."""
    return 2.0 * nu


def resolve_nb_constant(nu: float, tau: float, n_u: int = 64, tol: float = TOL.measure_truncation) -> dict:
    """Pick ``c`` in ``{1, 2 nu}`` by reproducing the negative binomial
    characteristic function from each candidate measure."""
    u = np.linspace(-math.pi, math.pi, n_u)
    target = cf(GnbdParams(nu=nu, tau=tau, m=0), u)
    errors = {}
    for label, c in (("unit", 1.0), ("two_nu", 2.0 * nu)):
        rep = np.exp(nb_levy_measure(nu, tau, tol, constant=c).levy_exponent(u))
        errors[label] = float(np.max(np.abs(rep - target)))
    chosen = min(errors, key=errors.get)
    return {
        "constant": 1.0 if chosen == "unit" else 2.0 * nu,
        "chosen": chosen,
        "error_unit": errors["unit"],
        "error_two_nu": errors["two_nu"],
    }


def nb_levy_measure(nu: float, tau: float, tol: float = TOL.measure_truncation, constant: float | None = None) -> SignedAtomicMeasure:
    """``c sum_{j>=1} tau^j / j delta_j`` truncated with tail mass below ``tol``."""
    if not 0 < tau < 1:
        raise DomainError(f"tau must lie in (0, 1), got {tau!r}")
    c = nb_measure_constant(nu) if constant is None else constant
    j = 1
    while c * tau ** (j + 1) / ((j + 1) * (1 - tau)) >= tol:
        j += 1
    js = np.arange(1, j + 1)
    w = c * np.exp(js * math.log(tau)) / js
    tail = c * tau ** (j + 1) / ((j + 1) * (1 - tau))
    return SignedAtomicMeasure.from_arrays(js, w, tail)


def _s_max(alpha_values: np.ndarray, tol: float) -> int:
    s = 1
    while True:
        bound = 2 * np.sum(alpha_values ** (s + 1) / ((s + 1) * (1 - alpha_values)))
        if bound < tol:
            return s
        s += 1


def quasi_levy_component(alpha_n: float, s_max: int, signed: bool = True) -> SignedAtomicMeasure:
    """Atoms ``+-s`` with weight ``(-1)^{s+1} alpha^s / s`` (or ``alpha^s/s``
    when ``signed=False``) for ``s = 1..s_max``."""
    s = np.arange(1, s_max + 1)
    w = np.exp(s * math.log(alpha_n)) / s if alpha_n > 0 else np.zeros(s_max)
    if signed:
        w = np.where(s % 2 == 1, w, -w)
    tail = 2 * alpha_n ** (s_max + 1) / ((s_max + 1) * (1 - alpha_n))
    return SignedAtomicMeasure.from_arrays(np.concatenate([s, -s]), np.concatenate([w, w]), tail)


def _components(nu: float, tau: float, m: int, tol: float, signed: bool) -> SignedAtomicMeasure:
    al = alphas(nu, tau, m)
    s_max = _s_max(al, tol)
    total = SignedAtomicMeasure({})
    for a_n in al:  # ascending n, then ascending |s| inside each component
        total = total + quasi_levy_component(float(a_n), s_max, signed=signed)
    return total


def quasi_levy_measure(nu: float, tau: float, m: int, tol: float = TOL.measure_truncation) -> SignedAtomicMeasure:
    """Sum over ``n`` of the signed measures
    ``sum_s (-1)^{s+1} alpha_n^s / s (delta_s + delta_{-s})``."""
    return _components(nu, tau, m, tol, signed=True)


@dataclass(frozen=True)
class LevyRepresentation:
    """``exp(i drift u + sum_x w_x (e^{iux} - 1))`` with a signed measure."""

    drift: int
    measure: SignedAtomicMeasure
    truncation_error: float

    def exponent(self, u):
        u = np.asarray(u, dtype=float)
        return (1j * self.drift * u + self.measure.levy_exponent(u))[()]

    def cf(self, u):
        return np.exp(self.exponent(u))

    def negative_atoms(self) -> dict[int, float]:
        return {k: w for k, w in self.measure.atoms.items() if w < 0}


def product_identity(nu: float, m: int) -> float:
    """``(2nu-m)_m / m! * prod_n (1 + x_n)/2``, which equals one."""
    if m == 0:
        return 1.0
    x = _zeros(nu, m)
    return pochhammer(2 * nu - m, m) / math.factorial(m) * float(np.prod((1 + x) / 2))


def a1_series(A: float, tol: float = 1e-14) -> float:
    """``-sum_{k>=1} C(2k,k) A^k / k``, summed until the geometric tail bound is
    below ``tol`` relative to the first term."""
    return -_central_series(A, 0, tol)


def a1_closed(A: float) -> float:
    return 2 * math.log((1 + math.sqrt(1 - 4 * A)) / 2)


def a2_series(A: float, s: int, tol: float = 1e-14) -> float:
    """``sum_{k>=s} C(2k, k-s) A^k / k``.

    This is positive; the identity it satisfies is ``alpha(4A)^s / s``.
    """
    return _central_series(A, s, tol)


def a2_closed(A: float, s: int) -> float:
    return float(alpha(4 * A)) ** s / s


def a3_closed(A: float) -> tuple[float, float]:
    """Both closed forms of the total mass of one quasi-Levy component."""
    return 2 * math.log1p(float(alpha(4 * A))), -2 * math.log((1 + math.sqrt(1 - 4 * A)) / 2)


def _central_series(A: float, s: int, tol: float) -> float:
    if not 0 <= A < 0.25:
        raise DomainError(f"need 0 <= A < 1/4, got {A!r}")
    if A == 0:
        return 0.0
    k = max(s, 1)
    term = math.comb(2 * k, k - s) * A**k  # C(2k, k-s) A^k
    terms = []
    while True:
        terms.append(term / k)
        ratio = (2 * k + 1) * (2 * k + 2) / ((k + 1 + s) * (k + 1 - s)) * A
        term *= ratio
        k += 1
        # subsequent ratios stay below 4A once they start decreasing towards it;
        # tol is relative to the leading term so tiny sums are still resolved
        if ratio < 1 and term / k / (1 - max(ratio, 4 * A)) < tol * terms[0]:
            break
        if k > 10_000_000:
            raise ConvergenceError("central binomial series did not converge", term)
    return math.fsum(terms)


def lk_representation(params: GnbdParams, tol: float = TOL.measure_truncation, verify: bool = False) -> LevyRepresentation:
    """Levy-Khintchine representation of the GNBD characteristic function.

    Drift ``m``; measure = negative binomial part plus the quasi-Levy
    measure.  Only defined below the non-vanishing threshold.  With
    ``verify=True`` the series identities behind the construction are
    re-checked for this parameter set.
    """
    if params.R != 1:
        raise DomainError("the Levy-Khintchine representation is implemented for R = 1")
    nu, tau, m = params.nu, params.tau, params.m
    measure = nb_levy_measure(nu, tau, tol / 2)
    if m >= 1:
        measure = measure + quasi_levy_measure(nu, tau, m, tol / 2)
    rep = LevyRepresentation(drift=m, measure=measure, truncation_error=measure.tail_bound)
    if verify and m >= 1:
        for A in a_coeffs(nu, tau, m):
            worst = abs(a1_series(A) - a1_closed(A))
            for s in range(1, 9):
                worst = max(worst, abs(a2_series(A, s) - a2_closed(A, s)))
            if worst > TOL.levy_identity_abs:
                raise ConvergenceError(f"series identities fail for A={A!r}", worst)
        defect = abs(product_identity(nu, m) - 1)
        if defect > TOL.product_identity:
            raise ConvergenceError("product identity fails", defect)
    return rep


def a0_product(params: GnbdParams, u):
    """``(2nu-m)_m/m! prod_i (1 - (1-x_i)/2 (1+tau^2-2tau cos u)/(1-tau)^2)``:
    the characteristic function with the negative binomial factor and the
    phase ``e^{imu}`` divided out, written through the Jacobi zeros."""
    u = np.asarray(u, dtype=float)
    nu, tau, m = params.nu_eff, params.tau, params.m
    if m == 0:
        return np.ones_like(u)[()]
    x = _zeros(nu, m)
    d = (1 + tau * tau - 2 * tau * np.cos(u)) / (1 - tau) ** 2
    prod = np.prod(1 - (1 - x) / 2 * d[..., None], axis=-1)
    return (pochhammer(2 * nu - m, m) / math.factorial(m) * prod)[()]


class NonvanishingReport(NamedTuple):
    min_abs_cf: float
    attained_u: float
    a0_max_error: float


def cf_nonvanishing_check(params: GnbdParams, grid_size: int = 4096) -> NonvanishingReport:
    """Minimum of ``|cf|`` over ``[-pi, pi]`` (grid search plus a bounded
    local refinement) and the agreement of the zero-product form with the
    characteristic function, measured relative to ``max(1, max |product|)``."""
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    u = np.linspace(-math.pi, math.pi, grid_size)
    values = cf(params, u)
    mod = np.abs(values)
    i = int(np.argmin(mod))
    step = u[1] - u[0]
    lo, hi = max(-math.pi, u[i] - step), min(math.pi, u[i] + step)
    best_u, best = float(u[i]), float(mod[i])
    res = minimize_scalar(lambda v: abs(cf(params, v)), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    if res.success and res.fun < best:
        best_u, best = float(res.x), float(res.fun)
    t = params.tau
    nb = np.exp(params.shape * np.log((1 - t) / (1 - t * np.exp(1j * u))))
    reduced = values / (nb * np.exp(1j * params.m * u))
    product = a0_product(params, u)
    scale = max(1.0, float(np.max(np.abs(product))))
    a0_err = float(np.max(np.abs(reduced - product))) / scale
    return NonvanishingReport(best, best_u, a0_err)
