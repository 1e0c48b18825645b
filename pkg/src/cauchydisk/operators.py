"""Integral operators of the disk Dirichlet problem.

All operators integrate against the normalized area measure, under which
the Green potential ``u = G[g]`` solves ``u_{z zbar} = g`` with zero
boundary values, and

* ``cauchy_transform``       = ``du/dz``     (kernel ``(1-|t|^2)/((z-t)(1-z conj t))``)
* ``conj_cauchy_transform``  = ``du/dzbar``
* ``cauchy_integral``        = ``int g(t)/(t - z) dA``
* ``j0star``                 = ``int conj(t) g(t)/(1 - z conj t) dA``

satisfy ``cauchy_transform = j0star - cauchy_integral``.

Each function accepts a scalar point or an array of points.  Passing
``tol=None`` evaluates at a fixed refinement ``level`` instead of adapting.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .fields import ScalarField
from .geometry import DiskPoint
from .quadrature import LocalIntegrand, QuadResult, SingularitySpec, integrate_disk, offset

THREADS_ENV = "CAUCHYDISK_THREADS"


class OperatorTag(str, enum.Enum):
    green_potential = "green_potential"
    cauchy = "cauchy"
    conj_cauchy = "conj_cauchy"
    cauchy_integral = "cauchy_integral"
    j0star = "j0star"


def _kernel(tag: OperatorTag, z: complex):
    zc = np.conj(z)
    if tag is OperatorTag.green_potential:
        def k(tau, center, delta):
            d = np.abs(offset(tau, center, delta, z))
            return 2 * np.log(d) - 2 * np.log(np.abs(1 - zc * tau))
        order = 0.0
    elif tag is OperatorTag.cauchy:
        def k(tau, center, delta):
            return (1 - np.abs(tau) ** 2) / (-offset(tau, center, delta, z) * (1 - z * np.conj(tau)))
        order = 1.0
    elif tag is OperatorTag.conj_cauchy:
        def k(tau, center, delta):
            return (1 - np.abs(tau) ** 2) / (-np.conj(offset(tau, center, delta, z)) * (1 - zc * tau))
        order = 1.0
    elif tag is OperatorTag.cauchy_integral:
        def k(tau, center, delta):
            return 1.0 / offset(tau, center, delta, z)
        order = 1.0
    else:
        def k(tau, center, delta):
            return np.conj(tau) / (1 - z * np.conj(tau))
        order = None
    return k, order


def evaluate_one(tag, g: ScalarField, z, tol: float | None = 1e-6, level: int = 2) -> QuadResult:
    """One operator value at one point, with its quadrature error estimate."""
    tag = OperatorTag(tag)
    z = DiskPoint(z).value if not isinstance(z, DiskPoint) else z.value
    if g.sup_norm == 0:
        return QuadResult(0j, 0.0, 0)
    kernel, order = _kernel(tag, z)

    def integrand(tau, center, delta):
        return kernel(tau, center, delta) * g(tau)

    sings = list(g.singularities)
    if order is not None:
        sings.append(SingularitySpec(z, order))
    f = LocalIntegrand(integrand)
    if tol is None:
        return integrate_disk(f, sings, np.inf, min_level=max(level - 1, 0), max_level=level, boundary_grading=False)
    return integrate_disk(f, sings, tol, boundary_grading=False)


def evaluate(tag, g: ScalarField, zs, tol: float | None = 1e-6, level: int = 2) -> list[QuadResult]:
    """Evaluate at every point of ``zs``; threads from ``CAUCHYDISK_THREADS``."""
    pts = np.atleast_1d(np.asarray(zs, dtype=complex)).ravel()
    threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    if threads > 1 and pts.size > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(lambda z: evaluate_one(tag, g, z, tol, level), pts))
    return [evaluate_one(tag, g, z, tol, level) for z in pts]


def _values(tag, g, z, tol, level):
    res = evaluate(tag, g, z, tol, level)
    vals = np.array([r.value for r in res])
    if np.ndim(z) == 0 and not isinstance(z, (list, tuple, np.ndarray)):
        return complex(vals[0])
    return vals.reshape(np.shape(z))


def green_potential(g: ScalarField, z, tol: float | None = 1e-6, level: int = 2):
    return _values(OperatorTag.green_potential, g, z, tol, level)


def cauchy_transform(g: ScalarField, z, tol: float | None = 1e-6, level: int = 2):
    return _values(OperatorTag.cauchy, g, z, tol, level)


def conj_cauchy_transform(g: ScalarField, z, tol: float | None = 1e-6, level: int = 2):
    return _values(OperatorTag.conj_cauchy, g, z, tol, level)


def cauchy_integral(g: ScalarField, z, tol: float | None = 1e-6, level: int = 2):
    return _values(OperatorTag.cauchy_integral, g, z, tol, level)


def j0star(g: ScalarField, z, tol: float | None = 1e-6, level: int = 2):
    return _values(OperatorTag.j0star, g, z, tol, level)


def apply(tag, g: ScalarField, z, tol: float | None = 1e-6, level: int = 2):
    return _values(OperatorTag(tag), g, z, tol, level)


def gradient_modulus(g: ScalarField, z, tol: float | None = 1e-6, level: int = 2):
    """``|u_z| + |u_zbar|`` for ``u = G[g]``."""
    c = cauchy_transform(g, z, tol, level)
    if g.real:
        return 2 * np.abs(c)
    return np.abs(c) + np.abs(conj_cauchy_transform(g, z, tol, level))
