"""The infinitely divisible law obtained by replacing the quasi-Levy measure
of the GNBD with its total variation: a compound Poisson law on the
integers plus the integer drift ``m``.  Includes an exact sampler and a
path simulator for the associated integer-valued Levy process."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

import numpy as np

from ._tolerances import TOL
from .decomposition import SignedAtomicMeasure
from .errors import DomainError
from .levy import _components, _require_below_threshold, alphas, nb_levy_measure, nb_measure_constant
from .specialfn import pochhammer

__all__ = [
    "CompoundPoissonSpec",
    "JumpSampler",
    "LevyPath",
    "make_rng",
    "total_variation_measure",
    "intensity",
    "compound_poisson_spec",
    "id_cf",
    "id_cf_closed",
    "id_cf_product_form",
    "product_form_ratio",
    "sample_compound_poisson",
    "simulate_path",
]

_ALIAS_THRESHOLD = 1000


def total_variation_measure(nu: float, tau: float, m: int, tol: float = TOL.measure_truncation) -> SignedAtomicMeasure:
    """Negative binomial Levy measure plus ``sum_n |mu_n|``; all atoms positive."""
    measure = nb_levy_measure(nu, tau, tol / 2)
    if m >= 1:
        measure = measure + _components(nu, tau, m, tol / 2, signed=False)
    return measure


def intensity(nu: float, tau: float, m: int, constant: float | None = None) -> float:
    """Total jump intensity ``-c log(1 - tau) - 2 sum_n log(1 - alpha_n)``.

    ``constant`` defaults to ``2 nu``; pass ``1.0`` for the value without the
    shape factor on the negative binomial part.
    """
    c = nb_measure_constant(nu) if constant is None else constant
    lam = -c * math.log1p(-tau)
    if m >= 1:
        lam -= 2 * float(np.sum(np.log1p(-alphas(nu, tau, m))))
    return lam


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """PCG64 generator for ``(seed, stream)``; distinct streams are
    statistically independent."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(stream,))))


@dataclass(frozen=True)
class CompoundPoissonSpec:
    """Compound Poisson law with drift: ``exp(i drift u + lambda (phi(u) - 1))``
    where ``phi`` is the characteristic function of ``jump_pmf``."""

    intensity: float
    jump_pmf: SignedAtomicMeasure
    drift: float = 0

    def __post_init__(self):
        if not self.intensity > 0:
            raise DomainError(f"intensity must be positive, got {self.intensity!r}")
        if 0 in self.jump_pmf.atoms:
            raise DomainError("jump distribution must not charge 0")
        if self.jump_pmf.atoms and self.jump_pmf.min_weight() < 0:
            raise DomainError("jump distribution must be nonnegative")
        if abs(self.jump_pmf.total_mass() - 1) > 1e-12:
            raise DomainError(f"jump distribution must sum to one, got {self.jump_pmf.total_mass()!r}")

    @classmethod
    def from_levy_measure(cls, measure: SignedAtomicMeasure, drift: float = 0) -> "CompoundPoissonSpec":
        lam = measure.total_mass()
        return cls(lam, measure.scaled(1 / lam), drift)

    def levy_measure(self) -> SignedAtomicMeasure:
        return self.jump_pmf.scaled(self.intensity)

    def exponent(self, u):
        u = np.asarray(u, dtype=float)
        return (1j * self.drift * u + self.intensity * self.jump_pmf.levy_exponent(u))[()]

    def cf(self, u):
        return np.exp(self.exponent(u))

    def mean(self) -> float:
        return self.drift + self.intensity * math.fsum(k * w for k, w in self.jump_pmf.atoms.items())

    def variance(self) -> float:
        return self.intensity * math.fsum(k * k * w for k, w in self.jump_pmf.atoms.items())

    def divide(self, n: int) -> "CompoundPoissonSpec":
        """The ``n``-th convolution root: intensity and drift divided by ``n``."""
        if n < 1:
            raise DomainError(f"n must be a positive integer, got {n}")
        return CompoundPoissonSpec(self.intensity / n, self.jump_pmf, self.drift / n)


def compound_poisson_spec(nu: float, tau: float, m: int, tol: float = TOL.measure_truncation) -> CompoundPoissonSpec:
    """The infinitely divisible law attached to ``(nu, tau, m)``.

    The intensity is the mass of the truncated total-variation measure, so
    that the jump law is exactly normalized; it differs from
    :func:`intensity` by at most the truncation bound.
    """
    if m >= 1:
        _require_below_threshold(nu, tau, m)
    return CompoundPoissonSpec.from_levy_measure(total_variation_measure(nu, tau, m, tol), drift=m)


def id_cf(nu: float, tau: float, m: int, u, tol: float = TOL.measure_truncation):
    """Characteristic function from the Levy exponent over the total-variation
    measure; equals one at ``u = 0`` by construction."""
    return compound_poisson_spec(nu, tau, m, tol).cf(u)


def _nb_cf(nu: float, tau: float, u):
    return np.exp(2 * nu * np.log((1 - tau) / (1 - tau * np.exp(1j * u))))


def id_cf_closed(nu: float, tau: float, m: int, u):
    """Closed form: negative binomial factor, phase ``e^{imu}`` and
    ``prod_n (1 - alpha_n)^2 / (1 + alpha_n^2 - 2 alpha_n cos u)``."""
    u = np.asarray(u, dtype=float)
    out = _nb_cf(nu, tau, u) * np.exp(1j * m * u)
    if m >= 1:
        al = alphas(nu, tau, m)
        out = out * np.prod((1 - al) ** 2 / (1 + al**2 - 2 * al * np.cos(u)[..., None]), axis=-1)
    return out[()]


def id_cf_product_form(nu: float, tau: float, m: int, u):
    """The product expression with ``(1 + tau^2 + 2 tau cos u)`` in the
    Jacobi-zero factors.  Differs from :func:`id_cf` by a constant factor."""
    u = np.asarray(u, dtype=float)
    x = _require_below_threshold(nu, tau, m)
    d = (1 + tau * tau + 2 * tau * np.cos(u)) / (1 - tau) ** 2
    factors = 1 / (1 - (1 - x) / 2 * d[..., None])
    pre = math.factorial(m) / pochhammer(2 * nu - m, m)
    return (_nb_cf(nu, tau, u) * np.exp(1j * m * u) * pre * np.prod(factors, axis=-1))[()]


def product_form_ratio(nu: float, tau: float, m: int, u, tol: float = TOL.measure_truncation):
    """``id_cf(u) / id_cf_product_form(u)``; the expected constant value is
    ``prod_n ((1 - alpha_n)/(1 + alpha_n))^2``."""
    return (id_cf(nu, tau, m, u, tol) / id_cf_product_form(nu, tau, m, u))[()]


class JumpSampler:
    """Draws i.i.d. jumps from a finite pmf on the integers.

    Inversion on the cumulative table for small supports, Walker/Vose alias
    tables above a thousand atoms.
    """

    def __init__(self, pmf: SignedAtomicMeasure):
        self.support = pmf.support
        p = pmf.weights / pmf.total_mass()
        self.method = "alias" if len(p) > _ALIAS_THRESHOLD else "inversion"
        if self.method == "inversion":
            self.cdf = np.cumsum(p)
            self.cdf[-1] = 1.0
        else:
            self.prob, self.alias = _alias_table(p)

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if n == 0:
            return np.zeros(0, dtype=np.int64)
        if self.method == "inversion":
            idx = np.searchsorted(self.cdf, rng.random(n), side="right")
            idx = np.minimum(idx, len(self.cdf) - 1)
        else:
            col = rng.integers(0, len(self.prob), n)
            idx = np.where(rng.random(n) < self.prob[col], col, self.alias[col])
        return self.support[idx]


def _alias_table(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(p)
    scaled = p * n
    prob = np.zeros(n)
    alias = np.zeros(n, dtype=np.int64)
    small = [i for i in range(n) if scaled[i] < 1]
    large = [i for i in range(n) if scaled[i] >= 1]
    while small and large:
        s, g = small.pop(), large.pop()
        prob[s] = scaled[s]
        alias[s] = g
        scaled[g] = scaled[g] + scaled[s] - 1
        (small if scaled[g] < 1 else large).append(g)
    for i in large + small:
        prob[i] = 1.0
    return prob, alias


def _drift_value(drift: float, t: float) -> tuple[float, bool]:
    d = drift * t
    return d, abs(d - round(d)) < 1e-12


def sample_compound_poisson(spec: CompoundPoissonSpec, t: float, seed: int, size: int | None = None, stream: int = 0):
    """Value at time ``t`` of the compound Poisson process with drift.

    ``drift * t`` plus a Poisson(``intensity * t``) number of i.i.d. jumps.
    Integer-valued (``int`` or ``int64`` array) whenever ``drift * t`` is an
    integer, float otherwise.  Deterministic in ``(seed, stream)``; with
    ``size=None`` the random draws are consumed in the same order as
    :func:`simulate_path` uses them.
    """
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    rng = make_rng(seed, stream)
    sampler = JumpSampler(spec.jump_pmf)
    d, integral = _drift_value(spec.drift, t)
    if size is None:
        n = int(rng.poisson(spec.intensity * t))
        jumps = int(sampler.draw(rng, n).sum())
        return jumps + int(round(d)) if integral else jumps + d
    counts = rng.poisson(spec.intensity * t, size)
    draws = sampler.draw(rng, int(counts.sum()))
    owner = np.repeat(np.arange(size), counts)
    sums = np.zeros(size, dtype=np.int64)
    np.add.at(sums, owner, draws)
    return sums + int(round(d)) if integral else sums + d


@dataclass(frozen=True)
class LevyPath:
    """Sampled path: one row per observation-grid time and per jump time.

    ``value = jumps_sum + drift_accrual``; ``jumps_sum`` is integer-valued
    and ``drift_accrual = drift * time`` is kept separately.
    """

    time: np.ndarray
    jumps_sum: np.ndarray
    drift_accrual: np.ndarray
    is_jump: np.ndarray
    drift: float = 0.0

    @property
    def value(self) -> np.ndarray:
        return self.jumps_sum + self.drift_accrual

    def jump_times(self) -> np.ndarray:
        return self.time[self.is_jump]

    def at(self, t: float) -> tuple[int, float]:
        """``(jumps_sum, drift_accrual)`` at time ``t`` (right-continuous)."""
        i = max(int(np.searchsorted(self.time, t, side="right")) - 1, 0)
        return int(self.jumps_sum[i]), self.drift * t

    def to_csv(self, target: str | Path | TextIO | None = None) -> str:
        """CSV with columns ``time, jumps_sum, drift_accrual, value``."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["time", "jumps_sum", "drift_accrual", "value"])
        for t, j, d, v in zip(self.time, self.jumps_sum, self.drift_accrual, self.value):
            writer.writerow([f"{t:.17g}", int(j), f"{d:.17g}", f"{v:.17g}"])
        text = buf.getvalue()
        if isinstance(target, (str, Path)):
            Path(target).write_text(text)
        elif target is not None:
            target.write(text)
        return text


def simulate_path(spec: CompoundPoissonSpec, horizon: float, n_steps: int, seed: int, stream: int = 0) -> LevyPath:
    """Path of the integer-valued Levy process on ``[0, horizon]``.

    Jump count ``N ~ Poisson(intensity * horizon)``, then the ``N`` jump
    sizes, then ``N`` uniform jump times (equivalent to exponential
    inter-arrivals).  The path is reported on the union of the regular grid
    with ``n_steps`` intervals and the jump times.
    """
    if not horizon > 0:
        raise DomainError(f"horizon must be positive, got {horizon!r}")
    if n_steps < 1:
        raise DomainError(f"n_steps must be positive, got {n_steps}")
    rng = make_rng(seed, stream)
    sampler = JumpSampler(spec.jump_pmf)
    n = int(rng.poisson(spec.intensity * horizon))
    sizes = sampler.draw(rng, n)
    times = rng.uniform(0.0, horizon, n)
    order = np.argsort(times, kind="stable")
    times, sizes = times[order], sizes[order]

    grid = np.linspace(0.0, horizon, n_steps + 1)
    all_times = np.concatenate([grid, times])
    is_jump = np.concatenate([np.zeros(len(grid), bool), np.ones(n, bool)])
    # grid rows sort before a jump at the same instant; value is right-continuous
    order = np.lexsort((is_jump, all_times))
    all_times, is_jump = all_times[order], is_jump[order]
    cum = np.concatenate([[0], np.cumsum(sizes)])
    count_before = np.searchsorted(times, all_times, side="right")
    jumps_sum = cum[count_before].astype(np.int64)
    return LevyPath(all_times, jumps_sum, spec.drift * all_times, is_jump, spec.drift)
