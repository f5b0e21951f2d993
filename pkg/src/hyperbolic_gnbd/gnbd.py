"""The generalized negative binomial distribution (GNBD) of a hyperbolic
Landau level: pmf, generating function, moments and Mandel statistics.

All dependence on the disc radius ``R`` enters through the effective
parameter ``nu * R**2`` and the intensity ``tau = |z|^2 / R^2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from ._tolerances import TOL
from .errors import DomainError
from .specialfn import gen_binomial, jacobi_eval, laguerre_eval

__all__ = [
    "GnbdParams",
    "TruncatedPmf",
    "Regime",
    "MandelReport",
    "landau_level",
    "pmf",
    "pmf_weights",
    "mgf",
    "mgf_closed_form",
    "mgf_finite_sum",
    "cf",
    "moments",
    "critical_intensity",
    "mandel",
    "generalized_poisson_mgf",
    "generalized_poisson_pmf",
    "contraction_limit_check",
]


@dataclass(frozen=True)
class GnbdParams:
    """Parameters ``(nu, tau, m, R)`` of a GNBD.

    ``tau`` is the light intensity ``|z|^2 / R^2``; only ``|z|`` matters.
    """

    nu: float
    tau: float
    m: int
    R: float = 1.0

    def __post_init__(self):
        if self.m != int(self.m) or self.m < 0:
            raise DomainError(f"m must be a nonnegative integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        if not self.R > 0:
            raise DomainError(f"R must be positive, got {self.R!r}")
        if not 2 * self.nu * self.R**2 > 1:
            raise DomainError(f"need 2*nu*R^2 > 1, got nu={self.nu!r}, R={self.R!r}")
        if self.m > math.floor(self.nu * self.R**2 - 0.5):
            raise DomainError(
                f"m={self.m} exceeds the last Landau level floor(nu R^2 - 1/2)"
                f" = {math.floor(self.nu * self.R**2 - 0.5)}"
            )
        if not 0 < self.tau < 1:
            raise DomainError(f"tau must lie in (0, 1), got {self.tau!r}")

    @classmethod
    def from_z(cls, nu: float, z: complex, m: int, R: float = 1.0) -> "GnbdParams":
        return cls(nu=nu, tau=abs(z) ** 2 / R**2, m=m, R=R)

    @property
    def nu_eff(self) -> float:
        """``nu * R**2``, the parameter every formula actually sees."""
        return self.nu * self.R**2

    @property
    def shape(self) -> float:
        """Negative binomial shape ``2 nu R^2``."""
        return 2 * self.nu * self.R**2


def landau_level(nu: float, m: int) -> float:
    """Hyperbolic Landau level ``4 m (2 nu - m - 1)``."""
    if not 2 * nu > 1:
        raise DomainError(f"discrete spectrum needs 2*nu > 1, got nu={nu!r}")
    if m < 0 or m > math.floor(nu - 0.5):
        raise DomainError(f"m={m} outside 0..floor(nu - 1/2) = {math.floor(nu - 0.5)}")
    return 4.0 * m * (2 * nu - m - 1)


def pmf_weights(params: GnbdParams, j) -> np.ndarray:
    """GNBD probabilities at the integer points ``j`` (array-like).

    The Gamma-ratio normalizer is assembled in log space.
    """
    j = np.atleast_1d(np.asarray(j, dtype=np.int64))
    c, m, t = params.shape, params.m, params.tau
    beta = c - 2 * m - 1
    x = 1 - 2 * t
    out = np.zeros(j.shape, dtype=float)
    base = (c - 2 * m) * math.log1p(-t)

    low = j < m
    for idx in np.flatnonzero(low):
        jj = int(j[idx])
        log_gamma = math.lgamma(jj + 1) + math.lgamma(c - m) - math.lgamma(m + 1) - math.lgamma(c - 2 * m + jj)
        poly = float(jacobi_eval(jj, m - jj, beta, x))
        if poly != 0:
            out[idx] = math.exp(log_gamma + base + (m - jj) * math.log(t) + 2 * math.log(abs(poly)))

    high = ~low
    if np.any(high):
        jh = j[high].astype(float)
        log_gamma = gammaln(m + 1) + gammaln(c - 2 * m + jh) - gammaln(jh + 1) - gammaln(c - m)
        poly = np.asarray(jacobi_eval(m, jh - m, beta, x), dtype=float)
        with np.errstate(divide="ignore"):
            logw = log_gamma + base + (jh - m) * math.log(t) + 2 * np.log(np.abs(poly))
        out[high] = np.exp(logw)
    return out


@dataclass(frozen=True)
class TruncatedPmf:
    """Probabilities ``weights[j]`` for ``j = 0..len-1`` plus a bound on the
    omitted mass ``sum_{j >= len} p_j``."""

    weights: np.ndarray
    tail_bound: float = 0.0
    offset: int = field(default=0)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).copy()
        if np.any(w < -TOL.negative_roundoff):
            raise DomainError("probability weights must be nonnegative")
        w[w < 0] = 0.0
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + len(self.weights))

    @property
    def j_max(self) -> int:
        return self.offset + len(self.weights) - 1

    def total(self) -> float:
        return math.fsum(self.weights)

    def moment(self, order: int) -> float:
        return math.fsum(self.support.astype(float) ** order * self.weights)

    def series(self, xi) -> complex:
        """Truncated generating function ``sum_j xi**j p_j``."""
        xi = np.asarray(xi, dtype=complex)
        powers = xi[..., None] ** self.support
        return (powers * self.weights).sum(axis=-1)[()]


def _auto_j_max(params: GnbdParams) -> tuple[int, np.ndarray]:
    # smallest j past the mean with three consecutive weights below the
    # geometric-tail threshold and ratios at most sqrt(tau)
    t = params.tau
    root = math.sqrt(t)
    mean = 2 * t * params.nu_eff / (1 - t) + params.m
    n = max(64, int(4 * mean) + 64)
    while True:
        w = pmf_weights(params, np.arange(n + 1))
        small = w / (1 - root) < TOL.pmf_tail
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio_ok = w[1:] <= root * w[:-1] + 1e-300
        for jj in range(int(math.ceil(mean)), n - 2):
            if small[jj] and small[jj + 1] and small[jj + 2] and ratio_ok[jj] and ratio_ok[jj + 1]:
                return jj + 2, w[: jj + 3]
        n *= 2
        if n > 10_000_000:
            raise DomainError("pmf tail does not decay; parameters too close to tau = 1")


def pmf(params: GnbdParams, j_max: int | None = None) -> TruncatedPmf:
    """Truncated GNBD pmf with a geometric-ratio bound on the omitted tail.

    With ``j_max=None`` the truncation point is chosen automatically.  For
    an explicit ``j_max`` the weights between ``j_max`` and the automatic
    truncation point are summed into the tail bound.
    """
    auto, w = _auto_j_max(params)
    root = math.sqrt(params.tau)
    geometric = w[-1] * root / (1 - root)
    if j_max is None:
        return TruncatedPmf(w, tail_bound=geometric)
    if j_max < 0:
        raise DomainError(f"j_max must be nonnegative, got {j_max}")
    if j_max >= auto:
        w = pmf_weights(params, np.arange(j_max + 1))
        return TruncatedPmf(w, tail_bound=w[-1] * root / (1 - root))
    return TruncatedPmf(w[: j_max + 1], tail_bound=math.fsum(w[j_max + 1 :]) + geometric)


def _check_disc(xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=complex)
    if np.any(np.abs(xi) > 1 + 1e-12):
        raise DomainError("the generating function is only defined for |xi| <= 1")
    return xi


def _nb_factor(params: GnbdParams, xi):
    t = params.tau
    return np.exp(params.shape * np.log((1 - t) / (1 - t * xi)))


def mgf_closed_form(params: GnbdParams, xi):
    """Product form of the generating function (singular at ``xi = tau``)."""
    xi = _check_disc(xi)
    t, m = params.tau, params.m
    w = (t - xi) * (1 - t * xi) / (1 - t) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = 1 + 2 * xi / w
    poly = jacobi_eval(m, params.shape - 2 * m - 1, 0.0, arg)
    return (_nb_factor(params, xi) * w**m * poly)[()]


def mgf_finite_sum(params: GnbdParams, xi):
    """Generating function as the negative binomial factor times a finite
    sum in powers of ``(1 - xi)^2 / xi``; regular on the whole disc."""
    xi = _check_disc(xi)
    t, m = params.tau, params.m
    x = t / (1 - t) ** 2
    total = 0
    for j in range(m + 1):
        coef = gen_binomial(params.shape - m - 1, j) * math.comb(m, j) * x**j
        total = total + coef * xi ** (m - j) * (1 - xi) ** (2 * j)
    return (_nb_factor(params, xi) * total)[()]


def mgf(params: GnbdParams, xi):
    """Generating function ``E[xi**X]`` on the closed unit disc.

    Uses the product form except near its removable singularity at
    ``xi = tau``, where the finite-sum form takes over.
    """
    xi = _check_disc(xi)
    t = params.tau
    near = np.abs(xi - t) * np.abs(1 - t * xi) < 1e-6
    if not np.any(near):
        return mgf_closed_form(params, xi)
    if np.all(near):
        return mgf_finite_sum(params, xi)
    out = np.empty(xi.shape, dtype=complex)
    out[near] = mgf_finite_sum(params, xi[near])
    out[~near] = mgf_closed_form(params, xi[~near])
    return out


def cf(params: GnbdParams, u):
    """Characteristic function ``E[exp(i u X)]``."""
    return mgf(params, np.exp(1j * np.asarray(u, dtype=float)))


def moments(params: GnbdParams) -> tuple[float, float]:
    """Closed-form mean and variance."""
    t, m, v = params.tau, params.m, params.nu_eff
    mean = 2 * t * v / (1 - t) + m
    var = 2 * t * (v + m * (2 * v - m - 1)) / (1 - t) ** 2
    return mean, var


def critical_intensity(nu: float, m: int) -> float:
    """Intensity at which the statistics are exactly Poissonian.

    The unique root in ``[0, 1)`` of ``(2nu-m) t^2 + 2m(2nu-m) t - m``.
    """
    if m == 0:
        return 0.0
    d = 2 * nu - m
    if d <= 0:
        raise DomainError(f"need 2*nu > m, got nu={nu!r}, m={m}")
    # rationalized form of sqrt(m^2 + m/d) - m, free of cancellation
    return (m / d) / (math.sqrt(m * m + m / d) + m)


class Regime(str, enum.Enum):
    SUB_POISSONIAN = "SubPoissonian"
    POISSONIAN = "Poissonian"
    SUPER_POISSONIAN = "SuperPoissonian"


@dataclass(frozen=True)
class MandelReport:
    mean: float
    variance: float
    q: float
    tau_crit: float
    rho: float
    regime: Regime


def mandel(params: GnbdParams) -> MandelReport:
    """Mandel parameter ``Q = Var/E - 1`` and the photon-statistics regime.

    ``tau_crit`` is the critical intensity (the squared anti-bunching
    radius), ``rho = sqrt(tau_crit)``; for ``R != 1`` both use ``nu R^2``.
    """
    mean, var = moments(params)
    t, m, v = params.tau, params.m, params.nu_eff
    # Q in the factored form; same value as var/mean - 1 without cancellation
    q = ((2 * v - m) * t * t + 2 * m * (2 * v - m) * t - m) / ((1 - t) * (2 * t * v + m * (1 - t)))
    tau_crit = critical_intensity(v, m)
    if q < -TOL.mandel_q:
        regime = Regime.SUB_POISSONIAN
    elif q > TOL.mandel_q:
        regime = Regime.SUPER_POISSONIAN
    else:
        regime = Regime.POISSONIAN
    return MandelReport(mean, var, q, tau_crit, math.sqrt(tau_crit), regime)


def generalized_poisson_mgf(lam: float, m: int, xi):
    """Flat-space limit law: ``exp(lam (xi - 1)) xi^m L_m(-lam (1-xi)^2 / xi)``,
    expanded so that ``xi = 0`` is harmless."""
    xi = np.asarray(xi, dtype=complex)
    total = 0
    for j in range(m + 1):
        total = total + math.comb(m, j) * lam**j / math.factorial(j) * xi ** (m - j) * (1 - xi) ** (2 * j)
    return (np.exp(lam * (xi - 1)) * total)[()]


def generalized_poisson_pmf(lam: float, m: int, j_max: int) -> np.ndarray:
    """Squared-Laguerre probabilities of the flat-space limit law."""
    out = np.empty(j_max + 1)
    for j in range(j_max + 1):
        lo, hi = min(j, m), max(j, m)
        log_ratio = math.lgamma(lo + 1) - math.lgamma(hi + 1)
        lag = float(laguerre_eval(lo, abs(m - j), lam))
        out[j] = math.exp(log_ratio - lam + abs(m - j) * math.log(lam)) * lag * lag
    return out


def contraction_limit_check(nu: float, z_abs: float, m: int, xi, R_values) -> np.ndarray:
    """Distance between the disc generating function at radius ``R`` and its
    flat limit, for each ``R`` in ``R_values``."""
    xi = complex(xi)
    if xi == 0:
        raise DomainError("xi must be nonzero")
    target = generalized_poisson_mgf(2 * nu * z_abs**2, m, xi)
    gaps = []
    for R in R_values:
        params = GnbdParams(nu=nu, tau=z_abs**2 / R**2, m=m, R=R)
        gaps.append(abs(mgf(params, xi) - target))
    return np.asarray(gaps)
