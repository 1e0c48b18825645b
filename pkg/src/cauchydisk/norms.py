"""L^p norms on the disk, empirical operator-norm ratios and Hölder quotients.

Hölder estimates are one-sided: a sampled supremum is only a lower bound
for the true seminorm, so "membership" is judged by stability of the
sampled supremum when the number of pairs is doubled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from . import operators
from .constants import c_q, conjugate
from .fields import ScalarField
from .quadrature import LocalIntegrand, SingularitySpec, integrate_annulus, integrate_disk


class NonIntegrableError(ValueError):
    pass


@dataclass(frozen=True)
class ExponentPair:
    p: float
    q: float

    @classmethod
    def from_p(cls, p: float) -> "ExponentPair":
        if not p > 1:
            raise ValueError(f"p = {p} must exceed 1")
        return cls(p, conjugate(p))

    @classmethod
    def for_norm_bound(cls, p: float) -> "ExponentPair":
        if not 1.5 < p < 2:
            raise ValueError(f"p = {p}: the L^p -> L^q estimate needs 3/2 < p < 2")
        return cls.from_p(p)

    @classmethod
    def for_gradient_holder(cls, p: float) -> "ExponentPair":
        if not 2 < p < math.inf:
            raise ValueError(f"p = {p}: the C^(1,nu) estimate needs 2 < p < inf")
        return cls.from_p(p)


def _check_integrable(f: ScalarField, p: float):
    for s in f.singularities:
        if s.order * p >= 2:
            raise NonIntegrableError(
                f"{f.label}: |f|^{p:g} blows up like |z - {s.location}|^-{s.order * p:g} (need < 2)"
            )


def lp_power(f: ScalarField, p: float, tol: float = 1e-9, exclude_radius: float | None = None) -> float:
    """``int |f|^p dA`` over the disk, or over ``exclude_radius < |z| < 1``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if exclude_radius:
        res = integrate_annulus(lambda t: np.abs(f(t)) ** p, exclude_radius, 1.0, tol)
    else:
        _check_integrable(f, p)
        sings = [SingularitySpec(s.location, s.order * p) for s in f.singularities]
        res = integrate_disk(LocalIntegrand(lambda t, c, d: np.abs(f(t)) ** p), sings, tol)
    return float(res.value.real)


def lp_norm(f: ScalarField, p: float, tol: float = 1e-9, exclude_radius: float | None = None) -> float:
    return lp_power(f, p, tol, exclude_radius) ** (1 / p)


@dataclass(frozen=True)
class GridSpec:
    """Polar z-grid: Gauss panels graded toward 0 times uniform angles."""

    per_panel: int = 4
    depth: int = 5
    angles: int = 32

    def rule(self):
        edges = np.array([0.0] + [2.0**-j for j in range(self.depth, -1, -1)])
        x, w = np.polynomial.legendre.leggauss(self.per_panel)
        x, w = 0.5 * (x + 1), 0.5 * w
        a, b = edges[:-1, None], edges[1:, None]
        r = (a + (b - a) * x).ravel()
        wr = ((b - a) * w).ravel()
        theta = 2 * math.pi * (np.arange(self.angles) + 0.5) / self.angles
        z = (r[None, :] * np.exp(1j * theta)[:, None]).ravel()
        weights = (np.full(self.angles, 2.0 / self.angles)[:, None] * (r * wr)[None, :]).ravel()
        return z, weights


def lq_norm_of_transform(g: ScalarField, pair: ExponentPair, grid: GridSpec = GridSpec(), level: int = 1) -> float:
    """``||C[g]||_q`` with ``C[g]`` sampled on ``grid`` at a fixed quadrature level."""
    if g.sup_norm == 0:
        return 0.0
    z, w = grid.rule()
    vals = operators.cauchy_transform(g, z, tol=None, level=level)
    return float(np.sum(w * np.abs(vals) ** pair.q) ** (1 / pair.q))


def norm_ratios(pair: ExponentPair, family: Sequence[ScalarField], grid: GridSpec = GridSpec(), level: int = 1):
    """``||C[g]||_q / ||g||_p`` for each field of the family."""
    out = []
    for g in family:
        if g.sup_norm == 0:
            raise ValueError(f"{g.label}: family members must be nonzero")
        out.append(lq_norm_of_transform(g, pair, grid, level) / lp_norm(g, pair.p))
    return out


def operator_norm_lower_bound(pair: ExponentPair, family: Sequence[ScalarField], grid: GridSpec = GridSpec(), level: int = 1) -> float:
    if not family:
        raise ValueError("empty family")
    return max(norm_ratios(pair, family, grid, level))


@dataclass(frozen=True)
class HolderReport:
    exponent: float
    quotient_sup: float
    pair_count: int
    max_pair: tuple

    def as_dict(self):
        z, w = self.max_pair
        return {
            "exponent": self.exponent,
            "quotient_sup": self.quotient_sup,
            "pair_count": self.pair_count,
            "max_pair": [[z.real, z.imag], [w.real, w.imag]],
        }


@dataclass(frozen=True)
class PairSampler:
    """Stratified pair sampler: uniform, near-diagonal and anchor-centered pairs.

    The uniform stratum is every pair drawn from ``n_uniform`` random
    points, so far-apart pairs are well covered at a cost linear in the
    number of evaluations.
    """

    n_uniform: int = 64
    n_near: int = 32
    n_anchor: int = 32
    seed: int = 0
    r_max: float = 0.95
    anchor: complex = 0j

    def doubled(self) -> "PairSampler":
        return replace(self, n_uniform=2 * self.n_uniform, n_near=2 * self.n_near, n_anchor=2 * self.n_anchor)

    def _disk(self, rng, n):
        u = rng.random((n, 2))
        return self.r_max * np.sqrt(u[:, 0]) * np.exp(2j * math.pi * u[:, 1])

    @staticmethod
    def _polar(rng, n, lo, hi):
        """Offsets with log-uniform modulus in ``[10^lo, 10^hi]``."""
        u = rng.random((n, 2))
        return 10 ** (lo + (hi - lo) * u[:, 0]) * np.exp(2j * math.pi * u[:, 1])

    def pairs(self):
        # one stream per stratum, so a doubled sampler draws a superset of pairs
        s_u, s_nz, s_ns, s_a = (np.random.default_rng(c) for c in np.random.SeedSequence(self.seed).spawn(4))
        pool = self._disk(s_u, self.n_uniform)
        i, j = np.triu_indices(self.n_uniform, 1)
        z1, w1 = pool[i], pool[j]
        z2 = self._disk(s_nz, self.n_near)
        step = self._polar(s_ns, self.n_near, -6, -2)
        w2 = z2 + step
        w2 = np.where(np.abs(w2) < self.r_max, w2, z2 - step)
        z3 = np.full(self.n_anchor, complex(self.anchor))
        w3 = self.anchor + self._polar(s_a, self.n_anchor, -4, math.log10(0.5))
        z = np.concatenate([z1, z2, z3])
        w = np.concatenate([w1, w2, w3])
        keep = np.abs(z - w) >= 1e-8
        return z[keep], w[keep]


def holder_quotient(f: Callable, mu: float, sampler: PairSampler = PairSampler()) -> HolderReport:
    """Largest ``|f(z) - f(w)| / |z - w|^mu`` over the sampled pairs."""
    if not 0 < mu <= 1:
        raise ValueError(f"mu = {mu} outside (0, 1]")
    z, w = sampler.pairs()
    pts, inv = np.unique(np.concatenate([z, w]), return_inverse=True)
    vals = np.asarray(f(pts))[inv]
    fz, fw = vals[: z.size], vals[z.size:]
    quot = np.abs(fz - fw) / np.abs(z - w) ** mu
    i = int(np.argmax(quot))
    return HolderReport(mu, float(quot[i]), int(z.size), (complex(z[i]), complex(w[i])))


def holder_stability(f: Callable, mu: float, sampler: PairSampler = PairSampler()):
    """Reports at ``sampler`` and its doubling, plus the ratio of the two sups."""
    a = holder_quotient(f, mu, sampler)
    b = holder_quotient(f, mu, sampler.doubled())
    return a, b, (b.quotient_sup / a.quotient_sup if a.quotient_sup > 0 else 1.0)


def grad_holder_quotient(g: ScalarField, nu: float, sampler: PairSampler = PairSampler(), p: float | None = None, level: int = 1):
    """Hölder quotient of the gradient pair ``(C[g], conj C[g])``.

    Returns ``(report, bound)`` where ``bound = 2 C_q ||g||_p`` with
    ``p = 2/(1 - nu)`` unless given.
    """
    p = 2 / (1 - nu) if p is None else p
    pair = ExponentPair.for_gradient_holder(p)
    c = holder_quotient(lambda z: operators.cauchy_transform(g, z, tol=None, level=level), nu, sampler)
    if g.real:
        cb = c
    else:
        cb = holder_quotient(lambda z: operators.conj_cauchy_transform(g, z, tol=None, level=level), nu, sampler)
    report = c if c.quotient_sup >= cb.quotient_sup else cb
    bound = 2 * c_q(pair.q).exact_value * (lp_norm(g, p) if g.sup_norm > 0 else 0.0)
    return report, bound


@dataclass(frozen=True)
class LogFit:
    slope: float
    intercept: float
    r2: float

    @property
    def logarithmic(self) -> bool:
        return self.r2 >= 0.99 and self.slope > 0


def log_growth_fit(eps: Sequence[float], values: Sequence[float]) -> LogFit:
    """Least-squares fit ``values ~ slope * log(1/eps) + intercept``."""
    x = np.log(1 / np.asarray(eps, dtype=float))
    y = np.asarray(values, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss = np.sum((y - y.mean()) ** 2)
    r2 = 1 - np.sum(resid**2) / ss if ss > 0 else 1.0
    return LogFit(float(slope), float(intercept), float(r2))


def truncated_growth(f: Callable, p: float, eps: Sequence[float], tol: float = 1e-10) -> tuple[list, LogFit]:
    """``int_{eps<|z|<1} |f|^p dA`` for each ``eps`` and its fit against ``log(1/eps)``."""
    vals = [float(integrate_annulus(lambda t: np.abs(f(t)) ** p, e, 1.0, tol).value.real) for e in eps]
    return vals, log_growth_fit(eps, vals)
