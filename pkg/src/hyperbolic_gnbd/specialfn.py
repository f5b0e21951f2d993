"""Special functions: log-gamma, Pochhammer symbols, binomials, Jacobi and
Laguerre polynomials, Jacobi zeros and terminating hypergeometric sums.

Scalar functions accept numpy arrays wherever the underlying arithmetic
broadcasts; Jacobi and Laguerre evaluation also accept complex arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import mpmath as mp
import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, DomainError

__all__ = [
    "JacobiSpec",
    "ZeroSet",
    "log_gamma",
    "pochhammer",
    "gen_binomial",
    "jacobi_eval",
    "jacobi_derivative",
    "jacobi_leading_coefficient",
    "jacobi_zeros",
    "laguerre_eval",
    "hyp_poly",
    "hyp_poly_3f2",
    "duplication_check",
]


def log_gamma(x: float) -> float:
    """Natural logarithm of the Gamma function for ``x > 0``."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def pochhammer(x, k: int):
    """Rising factorial ``(x)_k = x (x+1) ... (x+k-1)`` with ``(x)_0 = 1``.

    Evaluated as an explicit product so that ``(-n)_k`` vanishes exactly
    for ``k > n``.
    """
    if k < 0:
        raise DomainError(f"pochhammer requires k >= 0, got {k}")
    out = 1.0
    for i in range(k):
        out = out * (x + i)
    return out


def gen_binomial(x, k: int):
    """Generalized binomial coefficient ``x (x-1) ... (x-k+1) / k!``."""
    if k < 0:
        raise DomainError(f"gen_binomial requires k >= 0, got {k}")
    out = 1.0
    for i in range(k):
        out = out * (x - i) / (i + 1)
    return out


def hyp_poly(upper: Sequence[float], lower: Sequence[float], x):
    """Terminating generalized hypergeometric sum ``pFq(upper; lower; x)``.

    ``upper[0]`` must be a nonpositive integer ``-N``; the sum then has
    exactly ``N + 1`` terms and is accumulated by forward recurrence on the
    term ratio.  Works with floats, complex numbers, numpy arrays and
    mpmath numbers alike.
    """
    first = upper[0]
    if first > 0 or first != int(first):
        raise DomainError(f"first numerator parameter must be a nonpositive integer, got {first!r}")
    n_terms = -int(first)
    for q in lower:
        for j in range(n_terms):
            if q + j == 0:
                raise DomainError(f"denominator parameter {q!r} hits zero before termination")
    term = 1
    total = 1
    for j in range(n_terms):
        ratio = 1
        for p in upper:
            ratio *= p + j
        for q in lower:
            ratio /= q + j
        term = term * ratio * x / (j + 1)
        total = total + term
    return total


def hyp_poly_3f2(k_minus_m: int, p2: float, p3: float, q1: float, q2: float, x):
    """Terminating ``3F2(k_minus_m, p2, p3; q1, q2; x)``."""
    return hyp_poly((k_minus_m, p2, p3), (q1, q2), x)


def _jacobi_sum(n: int, a, b, x):
    # explicit binomial expansion in powers of (x-1)/2 and (x+1)/2
    lo = (x - 1) / 2
    hi = (x + 1) / 2
    total = 0
    for k in range(n + 1):
        total = total + gen_binomial(n + a, k) * gen_binomial(n + b, n - k) * lo ** (n - k) * hi**k
    return total


def _jacobi_hyp(n: int, a, b, x):
    return pochhammer(a + 1, n) / math.factorial(n) * hyp_poly((-n, n + a + b + 1), (a + 1,), (1 - x) / 2)


def _recurrence_degenerate(n: int, a, b) -> bool:
    for k in range(2, n + 1):
        if np.any(np.asarray(k + a + b) == 0) or np.any(np.asarray(2 * k + a + b - 2) == 0):
            return True
    return False


def _jacobi_recurrence(n: int, a, b, x):
    # three-term recurrence in the degree; stable on [-1, 1]
    p_prev = 1
    if n == 0:
        return p_prev
    p = (a + 1) + (a + b + 2) * (x - 1) / 2
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c0 = 2 * k * (k + a + b) * (s - 2)
        c1 = (s - 1) * (s * (s - 2) * x + a * a - b * b)
        c2 = 2 * (k + a - 1) * (k + b - 1) * s
        p_prev, p = p, (c1 * p - c2 * p_prev) / c0
    return p


_ROUTES = {"sum": _jacobi_sum, "hyp": _jacobi_hyp, "recurrence": _jacobi_recurrence}


def jacobi_eval(n: int, a, b, x, method: str = "recurrence", dps: int | None = None):
    """Jacobi polynomial ``P_n^{(a,b)}(x)``.

    Three routes are available:

    * ``"recurrence"`` (default): three-term recurrence in the degree,
      falling back to ``"sum"`` when a recurrence denominator vanishes
      (e.g. negative-integer ``a``).
    * ``"sum"``: the two-binomial expansion in ``(x-1)/2`` and ``(x+1)/2``,
      valid for every real ``a, b``.
    * ``"hyp"``: the terminating ``2F1`` representation; needs ``a + 1``
      not to be a nonpositive integer.

    ``x`` may be real, complex or an array; ``a`` may be an array for the
    ``"sum"`` and ``"recurrence"`` routes.  With ``dps`` set, the chosen
    route is carried out in mpmath arithmetic with that many decimal
    digits and rounded back to double precision (scalar ``x`` only).
    """
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if method not in _ROUTES:
        raise ValueError(f"unknown method {method!r}")
    if method == "recurrence" and _recurrence_degenerate(n, a, b):
        method = "sum"
    route = _ROUTES[method]
    if dps is not None:
        with mp.workdps(dps):
            xm = mp.mpc(x) if isinstance(x, complex) else mp.mpf(x)
            val = route(n, mp.mpf(a), mp.mpf(b), xm)
            return complex(val) if isinstance(val, mp.mpc) else float(val)
    x = np.asarray(x)
    out = np.asarray(route(n, a, b, x))
    shape = np.broadcast_shapes(x.shape, np.shape(a), np.shape(b))
    if out.shape != shape:
        out = np.broadcast_to(out, shape).copy()
    return out if out.ndim else out[()]


def jacobi_derivative(n: int, a: float, b: float, x):
    """First derivative of ``P_n^{(a,b)}`` at ``x``."""
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=float))[()]
    return (n + a + b + 1) / 2 * jacobi_eval(n - 1, a + 1, b + 1, x)


def jacobi_leading_coefficient(n: int, a: float, b: float) -> float:
    """Coefficient of ``x**n`` in ``P_n^{(a,b)}``: ``(n+a+b+1)_n / (2^n n!)``."""
    return pochhammer(n + a + b + 1, n) / (2.0**n * math.factorial(n))


@dataclass(frozen=True)
class ZeroSet:
    """Ascending zeros of a Jacobi polynomial and a residual certificate.

    ``residual_bound`` is ``max |P_n(x_i)|`` over the reported zeros divided
    by the leading coefficient.
    """

    zeros: np.ndarray
    degree: int
    residual_bound: float

    def __len__(self) -> int:
        return len(self.zeros)


@dataclass(frozen=True)
class JacobiSpec:
    """Degree and parameters ``(n, a, b)`` of a Jacobi polynomial."""

    n: int
    a: float
    b: float

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"degree must be nonnegative, got {self.n}")

    def __call__(self, x, method: str = "sum"):
        return jacobi_eval(self.n, self.a, self.b, x, method=method)

    def zeros(self) -> ZeroSet:
        return jacobi_zeros(self.n, self.a, self.b)


def _recurrence(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    # diagonal and off-diagonal of the symmetric Jacobi matrix
    diag = np.empty(n)
    for k in range(n):
        s = 2 * k + a + b
        diag[k] = (b - a) / (a + b + 2) if k == 0 else (b * b - a * a) / (s * (s + 2))
    off = np.empty(max(n - 1, 0))
    for k in range(1, n):
        s = 2 * k + a + b
        if k == 1:
            beta = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
        else:
            beta = 4 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1))
        off[k - 1] = math.sqrt(beta)
    return diag, off


def jacobi_zeros(n: int, a: float, b: float) -> ZeroSet:
    """Zeros of ``P_n^{(a,b)}`` for ``a, b > -1``.

    Eigenvalues of the symmetric tridiagonal recurrence matrix, followed by
    one Newton step per root.
    """
    if not (a > -1 and b > -1):
        raise DomainError(f"jacobi_zeros requires a > -1 and b > -1, got a={a!r}, b={b!r}")
    if n < 1:
        raise DomainError(f"jacobi_zeros requires n >= 1, got {n}")
    diag, off = _recurrence(n, a, b)
    if n == 1:
        x = diag.copy()
    else:
        x = eigh_tridiagonal(diag, off, eigvals_only=True)
    x = np.sort(x)
    step = jacobi_eval(n, a, b, x) / jacobi_derivative(n, a, b, x)
    polished = x - step
    lead = jacobi_leading_coefficient(n, a, b)
    residual = float(np.max(np.abs(jacobi_eval(n, a, b, polished)))) / abs(lead)
    ok = (
        np.all(np.isfinite(polished))
        and np.all(np.abs(step) < 1e-8)
        and np.all(polished > -1)
        and np.all(polished < 1)
        and np.all(np.diff(polished) > 0)
    )
    if not ok:
        raise ConvergenceError(f"Jacobi zeros for n={n}, a={a}, b={b} did not converge", residual)
    return ZeroSet(zeros=polished, degree=n, residual_bound=residual)


def laguerre_eval(n: int, a: float, x):
    """Generalized Laguerre polynomial ``L_n^{(a)}(x)`` by its finite sum."""
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    x = np.asarray(x)
    total = 0.0
    for k in range(n + 1):
        total = total + math.comb(n, k) * (-x) ** k / pochhammer(a + 1, k)
    out = np.asarray(pochhammer(a + 1, n) / math.factorial(n) * total)
    if out.shape != x.shape:
        out = np.broadcast_to(out, x.shape).copy()
    return out if out.ndim else out[()]


def duplication_check(x: float) -> float:
    """Relative defect of the Legendre duplication formula at ``x``.

    Computed in log space, so it also probes ``log_gamma`` at large ``x``.
    """
    if not x > 0:
        raise DomainError(f"duplication_check requires x > 0, got {x!r}")
    lhs = 0.5 * math.log(math.pi) + log_gamma(2 * x + 1)
    rhs = 2 * x * math.log(2.0) + log_gamma(x + 0.5) + log_gamma(x + 1)
    return abs(math.expm1(rhs - lhs))

