"""Adaptive integration over the unit disk against the normalized area measure.

Every integral here is taken with respect to ``dA = dx dy / pi``, so the
disk has mass one.  The 1/pi lives inside the rules and never at call sites.

Point singularities of type ``|tau - a|**(-order)`` with ``order < 2`` are
handled by a smooth partition of unity: each listed singular point ``a``
owns a polar chart ``tau = a + rho e^{i theta}`` covering the whole disk,
weighted by ``w_a = d_a**-6 / sum_b d_b**-6``.  Inside a chart the radius is
parametrized as ``rho = R(theta) s`` with ``R`` the distance to the circle;
``s`` is split into panels graded geometrically toward the singular point
and toward the boundary, and the innermost panel uses ``s = eps * t**m``
with ``m = 1/(2 - order)`` so that ``rho**(1-order) d rho`` becomes smooth.
Angles use the periodic trapezoid rule for interior centers and graded
Gauss-Legendre panels for centers on the circle.

The error estimate is the difference between two successive refinement
levels; the finer value is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

_PARTITION_POWER = 6
_MERGE = 1e-14
MAX_DEPTH = 40


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SingularitySpec:
    """A point blow-up ``|tau - location|**(-order)`` of the integrand.

    ``location`` may lie on the closed disk (the circle is needed for the
    plane integrals after inversion).  ``order == 0`` marks a logarithmic or
    merely non-smooth point that still deserves its own chart.
    """

    location: complex
    order: float = 0.0

    def __post_init__(self):
        loc = complex(getattr(self.location, "value", self.location))
        if abs(loc) > 1 + 1e-15:
            raise QuadratureError(f"singularity at {loc!r} lies outside the closed disk")
        if not 0 <= self.order < 2:
            raise QuadratureError(f"singularity order {self.order} is not integrable in the plane (need 0 <= order < 2)")
        object.__setattr__(self, "location", loc)
        object.__setattr__(self, "order", float(self.order))


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error_estimate: float
    evaluations: int
    converged: bool = True

    def __complex__(self):
        return complex(self.value)


@lru_cache(maxsize=None)
def _gauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _panel_rule(edges: np.ndarray, n: int):
    t, w = _gauss(n)
    a, b = edges[:-1, None], edges[1:, None]
    return (a + (b - a) * t).ravel(), ((b - a) * w).ravel()


@lru_cache(maxsize=256)
def radial_rule(n: int, depth_center: int, depth_boundary: int, power: float):
    """Nodes and weights on ``[0, 1]`` for ``s ds``-type radial integrals.

    Panels shrink geometrically (ratio 1/2) toward 0 and toward 1.  The panel
    touching 0 is mapped by ``s = eps * t**power``.  Weights do *not* include
    the factor ``s``.
    """
    inner = [2.0**-j for j in range(depth_center, 0, -1)]
    if depth_boundary:
        outer = [1.0 - 2.0**-j for j in range(1, depth_boundary + 1)]
    else:
        outer = []
    edges = np.array(inner + outer + [1.0])
    s, w = _panel_rule(edges, n)
    eps = edges[0]
    t, wt = _gauss(n)
    s0 = eps * t**power
    w0 = eps * power * t ** (power - 1) * wt
    return np.concatenate([s0, s]), np.concatenate([w0, w])


@lru_cache(maxsize=64)
def _end_graded(n: int, depth: int):
    """Gauss panels on ``[0, 1]`` graded toward both endpoints."""
    half = [2.0**-j for j in range(depth, 0, -1)]
    edges = np.array([0.0] + [0.5 * h for h in half] + [1.0 - 0.5 * h for h in reversed(half)] + [1.0])
    return _panel_rule(edges, n)


def _level_params(level: int):
    return dict(n=8 + 4 * level, depth_center=10 + 2 * level, depth_boundary=6 + 3 * level, angles=32 * 2**level)


def _merge(singularities: Iterable[SingularitySpec]) -> list[SingularitySpec]:
    merged: list[SingularitySpec] = []
    for s in singularities:
        for i, m in enumerate(merged):
            if abs(m.location - s.location) < _MERGE:
                merged[i] = SingularitySpec(m.location, min(m.order + s.order, 1.999999))
                break
        else:
            merged.append(s)
    return merged


def _chart(center: complex, order: float, level: int, extra_depth: int, boundary_grading: bool):
    """Nodes and (unnormalized by partition) weights of one polar chart."""
    p = _level_params(level)
    n = p["n"]
    power = 1.0 / (2.0 - order) if order > 0 else 1.0
    depth_b = min(p["depth_boundary"], MAX_DEPTH) if boundary_grading else 0
    s, ws = radial_rule(n, min(p["depth_center"] + extra_depth, 60), depth_b, power)
    c2 = abs(center) ** 2
    on_circle = c2 > 1 - 1e-15
    if on_circle:
        phi = math.atan2(center.imag, center.real)
        u, wu = _end_graded(n, 8 + 2 * level)
        psi = math.pi * u
        theta = phi + 0.5 * math.pi + psi
        wtheta = math.pi * wu
        R = 2.0 * np.sin(psi)
    else:
        m = int(math.ceil(p["angles"] / math.sqrt(1 - c2) / 4)) * 4
        theta = 2 * math.pi * (np.arange(m) + 0.5) / m
        wtheta = np.full(m, 2 * math.pi / m)
        e = np.cos(theta) * center.real + np.sin(theta) * center.imag
        R = -e + np.sqrt(e * e + 1 - c2)
    rho = R[:, None] * s[None, :]
    delta = rho * np.exp(1j * theta)[:, None]
    w = (wtheta * R**2)[:, None] * (s * ws)[None, :] / math.pi
    return delta.ravel(), w.ravel()


@dataclass(frozen=True)
class Chart:
    """Quadrature nodes ``center + delta`` with weights ``weight``."""

    center: complex
    delta: np.ndarray
    weight: np.ndarray

    @property
    def nodes(self):
        return self.center + self.delta


def disk_rule(singularities: Sequence[SingularitySpec] = (), level: int = 0, boundary_grading: bool = True) -> list[Chart]:
    """Assemble the charts covering the disk at a refinement level."""
    sings = _merge(singularities) or [SingularitySpec(0j, 0.0)]
    locs = np.array([s.location for s in sings])
    extra = 0
    if len(sings) > 1:
        sep = min(abs(a - b) for i, a in enumerate(locs) for b in locs[i + 1:])
        extra = max(0, int(math.ceil(-math.log2(sep))) + 2)
    charts = []
    for sg in sings:
        delta, w = _chart(sg.location, sg.order, level, extra, boundary_grading)
        if len(sings) > 1:
            tau = sg.location + delta
            d_own = np.abs(delta)
            acc = np.ones_like(d_own)
            for loc in locs:
                if loc != sg.location:
                    acc += (d_own / np.abs(tau - loc)) ** _PARTITION_POWER
            w = w / acc
        charts.append(Chart(sg.location, delta, w))
    return charts


def rule_nodes(charts: Sequence[Chart]):
    """Flatten charts into plain ``(nodes, weights)`` arrays."""
    return (np.concatenate([c.nodes for c in charts]), np.concatenate([c.weight for c in charts]))


def apply_rule(f: Callable, charts: Sequence[Chart]) -> complex:
    """Weighted sum of ``f`` over the charts.

    If ``f`` has a ``local(center, delta)`` method it is called with the
    chart-relative offsets, which keeps ``|tau - center|`` exact for nodes
    packed against a strong singularity.
    """
    local = getattr(f, "local", None)
    total = 0j
    for c in charts:
        vals = local(c.center, c.delta) if local is not None else f(c.nodes)
        total += np.sum(c.weight * np.asarray(vals))
    return complex(total)


def count_nodes(charts: Sequence[Chart]) -> int:
    return sum(c.delta.size for c in charts)


class LocalIntegrand:
    """Wrap ``fn(tau, center, delta)`` so it also works as a plain ``f(tau)``."""

    def __init__(self, fn):
        self.fn = fn

    def __call__(self, tau):
        tau = np.asarray(tau, dtype=complex)
        return self.fn(tau, 0j, tau)

    def local(self, center, delta):
        return self.fn(center + delta, center, delta)


def offset(tau, center, delta, point):
    """``tau - point``, exact when ``point`` is the chart center."""
    if point == center:
        return delta
    return tau - point


def integrate_disk(
    f: Callable,
    singularities: Sequence[SingularitySpec] = (),
    tol: float = 1e-8,
    *,
    min_level: int = 0,
    max_level: int = 4,
    boundary_grading: bool = True,
) -> QuadResult:
    """Integrate ``f`` over the unit disk with the normalized area measure.

    Parameters
    ----------
    f : callable
        Vectorised map from a complex array of points to values.
    singularities : sequence of SingularitySpec
        Points where ``f`` blows up (or is otherwise non-smooth).
    tol : float
        Absolute target for the difference of two refinement levels.

    Returns
    -------
    QuadResult
        ``converged`` is False when ``max_level`` was reached first.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    sings = [s if isinstance(s, SingularitySpec) else SingularitySpec(*s) for s in singularities]
    evaluations = 0
    charts = disk_rule(sings, min_level, boundary_grading)
    prev = apply_rule(f, charts)
    evaluations += count_nodes(charts)
    err = math.inf
    for level in range(min_level + 1, max_level + 1):
        charts = disk_rule(sings, level, boundary_grading)
        cur = apply_rule(f, charts)
        evaluations += count_nodes(charts)
        err = abs(cur - prev)
        prev = cur
        if err <= tol:
            return QuadResult(cur, err, evaluations, True)
    if not np.isfinite(prev):
        raise QuadratureError("integrand produced non-finite values at quadrature nodes")
    return QuadResult(prev, err, evaluations, False)


def integrate_annulus(f: Callable, r_inner: float, r_outer: float = 1.0, tol: float = 1e-8, *, max_level: int = 5) -> QuadResult:
    """Integrate over ``r_inner < |tau| < r_outer`` (normalized measure).

    Radial panels are graded geometrically toward the inner radius, which is
    where the integrands of interest concentrate.
    """
    if not 0 < r_inner < r_outer <= 1:
        raise ValueError("need 0 < r_inner < r_outer <= 1")
    prev = None
    evaluations = 0
    err = math.inf
    for level in range(0, max_level + 1):
        n = 8 + 4 * level
        m = 32 * 2**level
        k = max(1, int(math.ceil(math.log2(r_outer / r_inner))))
        edges = r_inner * 2.0 ** np.arange(k + 1, dtype=float)
        edges[-1] = r_outer
        r, wr = _panel_rule(edges, n)
        theta = 2 * math.pi * (np.arange(m) + 0.5) / m
        tau = (r[None, :] * np.exp(1j * theta)[:, None]).ravel()
        w = (np.full(m, 2 * math.pi / m)[:, None] * (r * wr)[None, :]).ravel() / math.pi
        cur = apply_rule(f, [Chart(0j, tau, w)])
        evaluations += tau.size
        if prev is not None:
            err = abs(cur - prev)
            if err <= tol:
                return QuadResult(cur, err, evaluations, True)
        prev = cur
    return QuadResult(prev, err, evaluations, False)


def integrate_plane_split(f: Callable | None, q: float, tol: float = 1e-8, *, max_level: int = 5) -> QuadResult:
    """``int_C f dA`` for integrands depending only on ``|xi|`` and ``|1 - xi|``.

    ``f(abs_xi, abs_one_minus_xi)`` defaults to ``1/(|xi|^q |1 - xi|^q)``.
    The exterior of the disk is folded inside by ``eta -> 1/conj(eta)``,
    under which ``|xi| = 1/|eta|``, ``|1 - xi| = |1 - eta|/|eta|`` and
    ``dA`` picks up ``|eta|**-4``.  Both pieces have singular points at 0
    and 1; at 0 the folded piece has order ``4 - 2q``.
    """
    if not 1 < q < 2:
        raise ValueError(f"q = {q} outside (1, 2)")
    if f is None:
        def f(a, b):
            return (a * b) ** -q

    def inner_fn(tau, center, delta):
        return f(np.abs(offset(tau, center, delta, 0j)), np.abs(offset(tau, center, delta, 1 + 0j)))

    def folded_fn(tau, center, delta):
        r = np.abs(offset(tau, center, delta, 0j))
        return f(1.0 / r, np.abs(offset(tau, center, delta, 1 + 0j)) / r) / r**4

    sings = [SingularitySpec(0j, q), SingularitySpec(1 + 0j, q)]
    inner = integrate_disk(LocalIntegrand(inner_fn), sings, tol / 2, max_level=max_level, boundary_grading=False)
    sings = [SingularitySpec(0j, 4 - 2 * q), SingularitySpec(1 + 0j, q)]
    outer = integrate_disk(LocalIntegrand(folded_fn), sings, tol / 2, max_level=max_level, boundary_grading=False)
    return QuadResult(
        inner.value + outer.value,
        inner.error_estimate + outer.error_estimate,
        inner.evaluations + outer.evaluations,
        inner.converged and outer.converged,
    )
