"""Gamma ratios and generalized hypergeometric series with certified tails.

Inside the unit disk the tail of a ``pFq`` series is bounded geometrically.
On the unit circle (where the terms decay only like a power of ``n``) the
tail is summed with the Euler-Maclaurin formula applied to the analytic
continuation of the term in ``n``; the reported ``tail_bound`` is then the
size of the first neglected correction plus the error of the remaining
integral, doubled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import integrate, special

MAX_TERMS = 10**7
_CHUNK = 4096
# relative accuracy floor of the tail integral; smaller absolute tolerances are clamped
_FLOOR = 1e-12


class SeriesError(ArithmeticError):
    pass


class DivergenceError(SeriesError):
    """The series is not absolutely convergent for the given argument."""


class NonconvergenceError(SeriesError):
    """The term budget ran out before the tail dropped below tolerance."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SeriesValue:
    sum: complex | float
    tail_bound: float
    terms_used: int

    def __float__(self):
        return float(np.real(self.sum))


@dataclass(frozen=True)
class HypergeomParams:
    numerator: Sequence[float]
    denominator: Sequence[float]
    argument: complex | float = 1.0
    _check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(float(a) for a in self.numerator))
        object.__setattr__(self, "denominator", tuple(float(b) for b in self.denominator))
        for b in self.denominator:
            if b <= 0 and float(b).is_integer():
                raise ValueError(f"denominator parameter {b} is a nonpositive integer")

    @property
    def excess(self) -> float:
        """``sum(b) - sum(a)``, the convergence margin on the unit circle."""
        return sum(self.denominator) - sum(self.numerator)


def gamma_ratio(n: int, a: float) -> float:
    """``Gamma(n + a) / n!`` evaluated in log space.

    Only ``0 < a <= 1`` is accepted, the range on which the two-sided bound
    ``(n+1)**(a-1) <= Gamma(n+a)/n! <= n**(a-1)`` holds for ``n >= 1``.
    """
    if not 0 < a <= 1:
        raise ValueError(f"a = {a} outside (0, 1]")
    if n < 0 or int(n) != n:
        raise ValueError(f"n = {n} must be a nonnegative integer")
    return math.exp(math.lgamma(n + a) - math.lgamma(n + 1))


def pochhammer(a, n):
    """Rising factorial ``(a)_n``."""
    return special.poch(a, n)


def _term_ratios(params: HypergeomParams, n: np.ndarray):
    r = np.ones_like(n, dtype=float)
    for a in params.numerator:
        r = r * (a + n)
    for b in params.denominator:
        r = r / (b + n)
    return r / (n + 1)


def _terms(params: HypergeomParams, start: int, count: int, first):
    """Terms ``start .. start+count-1`` given the value of term ``start``."""
    n = np.arange(start, start + count - 1, dtype=float)
    steps = _term_ratios(params, n) * params.argument
    out = np.empty(count, dtype=np.result_type(steps, first))
    out[0] = first
    out[1:] = first * np.cumprod(steps)
    return out


_BERN = special.bernoulli(16)


def _bernoulli_poly(n: int, a: float) -> float:
    return sum(special.comb(n, k, exact=True) * _BERN[k] * a ** (n - k) for k in range(n + 1))


def log_gamma_ratio(x, a: float, b: float):
    """``log Gamma(x + a) - log Gamma(x + b)`` without cancellation for large ``x``."""
    x = np.asarray(x, dtype=float)
    small = x < 30
    out = np.empty_like(x)
    xs = x[small]
    out[small] = special.gammaln(xs + a) - special.gammaln(xs + b)
    xl = x[~small]
    acc = (a - b) * np.log(xl)
    for k in range(1, 15):
        c = (_bernoulli_poly(k + 1, a) - _bernoulli_poly(k + 1, b)) / (k * (k + 1))
        acc = acc + (-1) ** (k + 1) * c / xl**k
    out[~small] = acc
    return out[()] if out.ndim == 0 else out


def _log_term(params: HypergeomParams, x):
    """Log of |term| as an analytic function of a real index ``x`` (up to a constant)."""
    lower = list(params.denominator) + [1.0]
    upper = list(params.numerator)
    s = 0.0
    for a, b in zip(upper, lower):
        s = s + log_gamma_ratio(x, a, b)
    for a in upper[len(lower):]:
        s = s + special.gammaln(a + x)
    for b in lower[len(upper):]:
        s = s - special.gammaln(b + x)
    return s


def _log_term_derivs(params: HypergeomParams, x: float):
    d = []
    for k in range(3):
        v = sum(special.polygamma(k, a + x) for a in params.numerator)
        v -= sum(special.polygamma(k, b + x) for b in params.denominator)
        v -= special.polygamma(k, 1.0 + x)
        d.append(float(v))
    return d


def euler_maclaurin_tail(params: HypergeomParams, N: int, t_N: float):
    """Estimate ``sum_{n >= N} t_n`` for a unit-argument series with real terms.

    Returns ``(estimate, bound)``.  ``t_N`` is the exact term at ``N`` and
    fixes sign and scale; the shape in ``n`` comes from log-gamma functions.
    """
    L_N = _log_term(params, float(N))
    slope = 1.0 + params.excess  # terms decay like n**(-slope)
    log_N = math.log(N)

    def flat(u):
        # x = N u**(-1/excess) maps [N, inf) to (0, 1] and strips the power law
        if u <= 0:
            return math.exp(-L_N - slope * log_N)
        log_x = log_N - math.log(u) / params.excess
        if log_x > 27.6:  # x > 1e12: log-gamma differences have reached their limit
            return math.exp(-L_N - slope * log_N)
        return math.exp(_log_term(params, math.exp(log_x)) + slope * log_x - L_N - slope * log_N)

    integral, abserr = integrate.quad(flat, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=200)
    integral *= N / params.excess
    abserr *= N / params.excess
    d1, d2, d3 = _log_term_derivs(params, float(N))
    t1 = d1
    t3 = d3 + 3 * d1 * d2 + d1**3
    corr = 0.5 - t1 / 12.0 + t3 / 720.0
    tail = t_N * (integral + corr)
    bound = 2.0 * abs(t_N) * (abs(t3) / 720.0 + abserr + 1e-15 * abs(integral))
    return tail, bound


def hypergeom(params: HypergeomParams, tol: float = 1e-12, max_terms: int = MAX_TERMS) -> SeriesValue:
    """Sum ``pFq(a; b; x)`` to within ``tol``.

    Raises
    ------
    DivergenceError
        ``|x| > 1``, or ``|x| == 1`` with ``Re(sum b - sum a) <= 0``.
    NonconvergenceError
        The tail could not be pushed under ``tol`` within ``max_terms`` terms.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = params.argument
    ax = abs(x)
    if ax > 1 + 1e-15:
        raise DivergenceError(f"|x| = {ax} > 1 lies outside the disk of convergence")
    if x == 0:
        return SeriesValue(1.0, 0.0, 1)
    on_circle = abs(ax - 1) <= 1e-15
    if on_circle and params.excess <= 0:
        raise DivergenceError(
            f"sum(b) - sum(a) = {params.excess:.6g} <= 0: series is not absolutely convergent at |x| = 1"
        )
    # past this index every (a + n), (b + n) is positive and the term ratio is monotone
    transient = int(math.ceil(2 * max([abs(v) for v in params.numerator + params.denominator] + [1.0]))) + 16
    dtype = complex if isinstance(x, complex) else float
    total = dtype(0)
    first = dtype(1)
    n = 0
    while n < max_terms:
        count = min(_CHUNK, max_terms - n)
        chunk = _terms(params, n, count + 1, first)
        if not np.all(np.isfinite(chunk)):
            raise NonconvergenceError("term overflow", SeriesValue(total, np.inf, n))
        total = total + chunk[:-1].sum()
        n += count
        first = chunk[-1]
        if n < transient:
            continue
        if first == 0:
            return SeriesValue(total, 0.0, n)
        if not on_circle:
            ratio = abs(_term_ratios(params, np.array([float(n)]))[0]) * ax
            rho = max(ratio, ax)
            if rho < 1:
                bound = abs(first) / (1 - rho)
                if bound <= tol:
                    return SeriesValue(total, bound, n)
            continue
        if n & (n - 1):
            continue  # tail estimates are costly: only at powers of two
        if x == 1 and np.isrealobj(first):
            tail, bound = euler_maclaurin_tail(params, n, float(first))
            if bound <= max(tol, _FLOOR * abs(total + tail)):
                return SeriesValue(total + tail, bound, n)
        else:
            abs_tail, abs_err = euler_maclaurin_tail(params, n, abs(first))
            bound = abs_tail + abs_err
            if bound <= tol:
                return SeriesValue(total, bound, n)
    raise NonconvergenceError(
        f"tail still above tol = {tol:g} after {n} terms", SeriesValue(total, np.inf, n)
    )


def hyp_series(numerator, denominator, x, tol=1e-12) -> SeriesValue:
    return hypergeom(HypergeomParams(numerator, denominator, x), tol)


def boundary_moment(beta: float, r: float, tol: float = 1e-14) -> SeriesValue:
    """Mean of ``|1 - r e^{i theta}|^{-2 beta}`` over the circle.

    Summed as ``sum_n ((beta)_n / n!)^2 r^(2n) = 2F1(beta, beta; 1; r^2)``.
    """
    if beta <= 0:
        raise ValueError(f"beta = {beta} must be positive")
    if not 0 <= r < 1:
        raise ValueError(f"r = {r} must lie in [0, 1)")
    return hypergeom(HypergeomParams((beta, beta), (1.0,), float(r) ** 2), tol)


def beta_radial_integral(n: int, beta: float) -> float:
    """``int_0^1 r^(2n+1-beta) (1-r^2)^beta dr`` in closed form."""
    if n < 0 or int(n) != n:
        raise ValueError(f"n = {n} must be a nonnegative integer")
    if not 1 <= beta < 2:
        raise ValueError(f"beta = {beta} outside [1, 2)")
    return 0.5 * math.exp(math.lgamma(1 + beta) + math.lgamma(n + 1 - beta / 2) - math.lgamma(n + 2 + beta / 2))
