"""Pointwise geometry of the unit disk.

Möbius maps, the pseudo-hyperbolic distance and the two kernels (Green and
Cauchy) that every integral operator in the package is built from.  All
functions accept scalars or numpy arrays of complex numbers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_MODULUS = 1.0 - 1e-12
COINCIDENCE = 1e-14


class DiskError(ValueError):
    """A point that should lie in the open unit disk does not."""


@dataclass(frozen=True)
class DiskPoint:
    """A complex number in the open unit disk."""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not np.isfinite(v.real) or not np.isfinite(v.imag):
            raise DiskError(f"non-finite point {v!r}")
        if abs(v) > MAX_MODULUS:
            raise DiskError(f"|{v!r}| = {abs(v):.17g} is not inside the open unit disk")
        object.__setattr__(self, "value", v)

    def __complex__(self):
        return self.value

    def __abs__(self):
        return abs(self.value)


@dataclass(frozen=True)
class KernelValue:
    value: complex
    finite: bool


def as_point(z) -> complex:
    """Unwrap a DiskPoint or validate a bare complex number."""
    if isinstance(z, DiskPoint):
        return z.value
    return DiskPoint(z).value


def _arr(x):
    if isinstance(x, DiskPoint):
        x = x.value
    return np.asarray(x, dtype=complex)


def mobius(w, z):
    """The involutive automorphism ``(w - z) / (1 - conj(w) z)``."""
    w = _arr(w)
    z = _arr(z)
    out = (w - z) / (1.0 - np.conj(w) * z)
    return out[()] if out.ndim == 0 else out


def pseudo_hyperbolic(z, w):
    """Pseudo-hyperbolic distance ``|mobius(w, z)|``."""
    out = np.abs(mobius(w, z))
    return out[()] if np.ndim(out) == 0 else out


def one_minus_rho_squared(z, w):
    """Right-hand side of the ``1 - rho**2`` identity, evaluated directly."""
    z = _arr(z)
    w = _arr(w)
    out = (1 - np.abs(z) ** 2) * (1 - np.abs(w) ** 2) / np.abs(1 - np.conj(z) * w) ** 2
    return out[()] if out.ndim == 0 else out


def green(z, tau):
    """Vectorised Green function ``log|(z - tau)/(1 - conj(z) tau)|^2``.

    Returns ``-inf`` at coincident points instead of raising.
    """
    z = _arr(z)
    tau = _arr(tau)
    num = np.abs(z - tau) ** 2
    den = np.abs(1 - np.conj(z) * tau) ** 2
    with np.errstate(divide="ignore"):
        out = np.where(np.sqrt(num) < COINCIDENCE, -np.inf, np.log(num / den))
    return out[()] if out.ndim == 0 else out


def cauchy(z, tau):
    """Vectorised kernel ``(1 - |tau|^2) / ((z - tau)(1 - z conj(tau)))``.

    This is the z-derivative of :func:`green`; coincident points give ``nan``.
    """
    z = _arr(z)
    tau = _arr(tau)
    d = z - tau
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (1 - np.abs(tau) ** 2) / (d * (1 - z * np.conj(tau)))
        out = np.where(np.abs(d) < COINCIDENCE, np.nan + 0j, out)
    return out[()] if out.ndim == 0 else out


def green_kernel(z, tau) -> KernelValue:
    z, tau = as_point(z), as_point(tau)
    if abs(z - tau) < COINCIDENCE:
        return KernelValue(complex(-np.inf), False)
    return KernelValue(complex(green(z, tau)), True)


def cauchy_kernel(z, tau) -> KernelValue:
    z, tau = as_point(z), as_point(tau)
    if abs(z - tau) < COINCIDENCE:
        return KernelValue(complex(np.nan, np.nan), False)
    return KernelValue(complex(cauchy(z, tau)), True)
