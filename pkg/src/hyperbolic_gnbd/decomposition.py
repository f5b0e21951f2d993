"""Atomic decomposition of the GNBD as negative binomial * delta_m * (finite
signed measure), and the signed-measure algebra that realizes it."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from ._tolerances import TOL
from .errors import DomainError
from .gnbd import GnbdParams, TruncatedPmf, pmf
from .specialfn import gen_binomial, hyp_poly_3f2

__all__ = [
    "SignedAtomicMeasure",
    "q_poly",
    "q_poly_hypergeometric",
    "decomposition_measure",
    "unit_centre_decomposition_measure",
    "convolve",
    "nbd_part",
    "decomposed_pmf",
    "linearized_fourier",
]

_ZERO_ATOM = 1e-300


@dataclass(frozen=True)
class SignedAtomicMeasure:
    """Finite signed measure on the integers, stored sparsely.

    ``tail_bound`` bounds the total variation of whatever was dropped when
    the measure was truncated (zero for an exact finite measure).
    """

    atoms: Mapping[int, float]
    tail_bound: float = 0.0

    def __post_init__(self):
        clean = {int(k): float(v) for k, v in sorted(self.atoms.items()) if abs(v) >= _ZERO_ATOM}
        object.__setattr__(self, "atoms", clean)

    @classmethod
    def from_arrays(cls, support, weights, tail_bound: float = 0.0) -> "SignedAtomicMeasure":
        acc: dict[int, float] = {}
        for k, w in zip(np.asarray(support).tolist(), np.asarray(weights, dtype=float).tolist()):
            acc[k] = acc.get(k, 0.0) + w
        return cls(acc, tail_bound)

    @classmethod
    def dirac(cls, k: int, weight: float = 1.0) -> "SignedAtomicMeasure":
        return cls({k: weight})

    def __len__(self) -> int:
        return len(self.atoms)

    def __getitem__(self, k: int) -> float:
        return self.atoms.get(k, 0.0)

    def __add__(self, other: "SignedAtomicMeasure") -> "SignedAtomicMeasure":
        acc = dict(self.atoms)
        for k, w in other.atoms.items():
            acc[k] = acc.get(k, 0.0) + w
        return SignedAtomicMeasure(acc, self.tail_bound + other.tail_bound)

    def scaled(self, factor: float) -> "SignedAtomicMeasure":
        return SignedAtomicMeasure({k: factor * w for k, w in self.atoms.items()}, abs(factor) * self.tail_bound)

    def abs(self) -> "SignedAtomicMeasure":
        """Total-variation measure (atom-wise absolute value)."""
        return SignedAtomicMeasure({k: abs(w) for k, w in self.atoms.items()}, self.tail_bound)

    @property
    def support(self) -> np.ndarray:
        return np.fromiter(self.atoms.keys(), dtype=np.int64, count=len(self.atoms))

    @property
    def weights(self) -> np.ndarray:
        return np.fromiter(self.atoms.values(), dtype=float, count=len(self.atoms))

    def total_mass(self) -> float:
        return math.fsum(self.atoms.values())

    def total_variation(self) -> float:
        return math.fsum(abs(w) for w in self.atoms.values())

    def min_weight(self) -> float:
        return min(self.atoms.values()) if self.atoms else 0.0

    def fourier(self, u):
        """``sum_k w_k exp(i u k)``."""
        u = np.asarray(u, dtype=float)
        return (np.exp(1j * u[..., None] * self.support) @ self.weights)[()]

    def levy_exponent(self, u):
        """``sum_k w_k (exp(i u k) - 1)``."""
        u = np.asarray(u, dtype=float)
        return (np.expm1(1j * u[..., None] * self.support) @ self.weights)[()]

    def dense(self) -> tuple[int, np.ndarray]:
        """``(offset, array)`` with ``array[i]`` the weight at ``offset + i``."""
        if not self.atoms:
            return 0, np.zeros(0)
        lo, hi = min(self.atoms), max(self.atoms)
        arr = np.zeros(hi - lo + 1)
        for k, w in self.atoms.items():
            arr[k - lo] = w
        return lo, arr


Measure = Union[TruncatedPmf, SignedAtomicMeasure]


def convolve(a: Measure, b: SignedAtomicMeasure) -> SignedAtomicMeasure:
    """Discrete convolution ``a * b``.

    ``b`` must be finite.  If ``a`` carries a tail bound, the result's bound
    is ``total_variation(b) * tail_bound(a)`` plus ``b``'s own bound scaled
    by the total variation of ``a``.
    """
    if isinstance(a, TruncatedPmf):
        a_off, a_arr, a_tail, a_tv = a.offset, np.asarray(a.weights), a.tail_bound, a.total() + a.tail_bound
    else:
        a_off, a_arr = a.dense()
        a_tail, a_tv = a.tail_bound, a.total_variation() + a.tail_bound
    b_off, b_arr = b.dense()
    if len(a_arr) == 0 or len(b_arr) == 0:
        return SignedAtomicMeasure({}, 0.0)
    out = np.convolve(a_arr, b_arr)
    tail = b.total_variation() * a_tail + a_tv * b.tail_bound
    return SignedAtomicMeasure.from_arrays(np.arange(len(out)) + a_off + b_off, out, tail)


def _check(nu: float, m: int, k: int | None = None) -> None:
    if m < 0 or m != int(m):
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    if not 2 * nu > 2 * m:
        raise DomainError(f"need 2*nu > 2*m, got nu={nu!r}, m={m}")
    if k is not None and not 0 <= k <= m:
        raise DomainError(f"need 0 <= k <= m, got k={k}, m={m}")


def q_poly(nu: float, m: int, k: int, x: float) -> float:
    """Perturbation polynomial
    ``(-1)^k sum_{j=k}^m C(2nu-m-1, j) C(m, j) C(2j, j-k) (-x)^j``.

    ``k = 0`` gives the weight of the central atom (the full sum, which is
    not identically one).  The alternating sum is accumulated exactly
    rounded with ``math.fsum``.
    """
    _check(nu, m, k)
    terms = [
        gen_binomial(2 * nu - m - 1, j) * math.comb(m, j) * math.comb(2 * j, j - k) * (-x) ** j for j in range(k, m + 1)
    ]
    return (-1) ** k * math.fsum(terms)


def q_poly_hypergeometric(nu: float, m: int, k: int, x: float) -> float:
    """``q_poly`` through a terminating 3F2:
    ``C(m,k) C(2nu-m-1,k) x^k 3F2(k-m, k+m+1-2nu, k+1/2; k+1, 2k+1; -4x)``."""
    _check(nu, m, k)
    pre = math.comb(m, k) * gen_binomial(2 * nu - m - 1, k) * x**k
    return pre * hyp_poly_3f2(k - m, k + m + 1 - 2 * nu, k + 0.5, k + 1, 2 * k + 1, -4 * x)


def decomposition_measure(nu: float, m: int, tau: float) -> SignedAtomicMeasure:
    """Finite signed measure ``sum_{k=0}^{2m} q_{|k-m|}(tau/(1-tau)^2) delta_k``,
    symmetric about ``m``, with total mass one."""
    _check(nu, m)
    if not 0 < tau < 1:
        raise DomainError(f"tau must lie in (0, 1), got {tau!r}")
    x = tau / (1 - tau) ** 2
    q = [q_poly(nu, m, k, x) for k in range(m + 1)]
    return SignedAtomicMeasure({k: q[abs(k - m)] for k in range(2 * m + 1)})


def unit_centre_decomposition_measure(nu: float, m: int, tau: float) -> SignedAtomicMeasure:
    """Same measure with the central weight replaced by one, i.e. dropping
    the constant terms of the linearized powers.  Kept for comparison; it
    does not reproduce the GNBD when ``m >= 1``."""
    exact = decomposition_measure(nu, m, tau)
    atoms = dict(exact.atoms)
    atoms[m] = 1.0
    return SignedAtomicMeasure(atoms)


def nbd_part(nu: float, tau: float, j_max: int | None = None) -> TruncatedPmf:
    """Negative binomial factor (shape ``2 nu``) of the decomposition."""
    return pmf(GnbdParams(nu=nu, tau=tau, m=0), j_max)


def decomposed_pmf(nu: float, m: int, tau: float, j_max: int | None = None) -> SignedAtomicMeasure:
    """GNBD weights rebuilt as negative binomial * decomposition measure."""
    return convolve(nbd_part(nu, tau, j_max), decomposition_measure(nu, m, tau))


def linearized_fourier(nu: float, m: int, tau: float, u):
    """``exp(i u m) sum_j C(2nu-m-1,j) C(m,j) (-4 tau/(1-tau)^2)^j sin^{2j}(u/2)``,
    the Fourier transform the decomposition measure must match."""
    _check(nu, m)
    u = np.asarray(u, dtype=float)
    y = -4 * tau / (1 - tau) ** 2 * np.sin(u / 2) ** 2
    total = sum(gen_binomial(2 * nu - m - 1, j) * math.comb(m, j) * y**j for j in range(m + 1))
    return (np.exp(1j * m * u) * total)[()]
