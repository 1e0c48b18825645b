"""Complex-valued fields on the disk: closed forms and sampled grids.

A field is a vectorised callable plus the metadata the integrators need:
where it is singular (and how strongly) and, for bounded fields, its exact
sup-norm.  Builtin fields are addressable by string id, e.g.
``example1:alpha=0.5`` or ``power:s=0.75``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .quadrature import SingularitySpec


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class ScalarField:
    label: str
    evaluator: Callable = field(repr=False, compare=False)
    kind: str = "builtin"
    singularities: tuple = ()
    sup_norm: float = math.inf
    smooth: bool = False
    real: bool = False

    def __call__(self, tau):
        tau = np.asarray(tau, dtype=complex)
        return np.asarray(self.evaluator(tau), dtype=complex) * np.ones_like(tau)

    def __mul__(self, c):
        c = complex(c)
        return ScalarField(
            f"{_fmt(c)}*({self.label})",
            lambda t, f=self.evaluator: c * f(t),
            self.kind,
            self.singularities,
            abs(c) * self.sup_norm if c != 0 else 0.0,
            self.smooth,
            self.real and c.imag == 0,
        )

    __rmul__ = __mul__

    def __add__(self, other: "ScalarField"):
        return ScalarField(
            f"({self.label})+({other.label})",
            lambda t, f=self.evaluator, g=other.evaluator: f(t) + g(t),
            "builtin" if self.kind == other.kind == "builtin" else "sampled-grid",
            _union(self.singularities, other.singularities),
            self.sup_norm + other.sup_norm,
            self.smooth and other.smooth,
            self.real and other.real,
        )

    def conj(self):
        return ScalarField(
            f"conj({self.label})",
            lambda t, f=self.evaluator: np.conj(f(t)),
            self.kind,
            self.singularities,
            self.sup_norm,
            self.smooth,
            self.real,
        )


def _fmt(c: complex) -> str:
    return repr(c.real) if c.imag == 0 else repr(c)


def _union(a, b):
    out = {}
    for s in tuple(a) + tuple(b):
        prev = out.get(s.location)
        out[s.location] = s if prev is None or prev.order < s.order else prev
    return tuple(out.values())


def _origin(order: float):
    return (SingularitySpec(0j, order),)


def _safe_arg_power(tau, k):
    """``(tau/|tau|)**k`` with value 0 at the origin."""
    r = np.abs(tau)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r > 0, (tau / np.where(r > 0, r, 1)) ** k, 0)
    return out


def zero():
    return ScalarField("zero", lambda t: np.zeros_like(t), sup_norm=0.0, smooth=True, real=True)


def one():
    return ScalarField("one", lambda t: np.ones_like(t), sup_norm=1.0, smooth=True, real=True)


def example1(alpha: float):
    """Right-hand side ``-4 a (a + 1/3) z^{1/3} |z|^{2a - 2}`` of the boundary-case example.

    This is the Laplacian of ``u = z^{1/3}(1 - |z|^{2a})`` (principal branch);
    with the ``u_{z zbar} = g`` convention the matching potential is ``4u``
    away from the branch cut.
    """
    if not alpha > 1 / 6:
        raise FieldError(f"alpha = {alpha} must exceed 1/6 for g to lie in L^(3/2)")
    c = -4 * alpha * (alpha + 1 / 3)
    order = max(0.0, 5 / 3 - 2 * alpha)

    def g(t):
        r = np.abs(t)
        with np.errstate(divide="ignore", invalid="ignore"):
            v = c * t ** (1 / 3) * r ** (2 * alpha - 2)
        return np.where(r > 0, v, 0)

    sup = math.inf if 2 * alpha - 5 / 3 < 0 else abs(c)
    return ScalarField(f"example1:alpha={alpha:g}", g, singularities=_origin(order), sup_norm=sup)


def example2():
    return ScalarField("example2", lambda t: _safe_arg_power(t, 2), singularities=_origin(0.0), sup_norm=1.0)


def angular(k: int):
    return ScalarField(f"angular:k={k}", lambda t: _safe_arg_power(t, k), singularities=_origin(0.0), sup_norm=1.0)


def power(s: float):
    if not 0 <= s < 2:
        raise FieldError(f"power field needs 0 <= s < 2, got {s}")

    def g(t):
        r = np.abs(t)
        with np.errstate(divide="ignore"):
            return np.where(r > 0, r ** (-s), np.inf if s > 0 else 1.0)

    return ScalarField(
        f"power:s={s:g}", g, singularities=_origin(s), sup_norm=math.inf if s > 0 else 1.0, real=True
    )


def gauss():
    """Smooth off-center bump ``exp(-4 |z - 0.3|^2)``."""
    return ScalarField("smooth:gauss", lambda t: np.exp(-4 * np.abs(t - 0.3) ** 2), sup_norm=1.0, smooth=True, real=True)


def bump(x: float, y: float, w: float):
    c = complex(x, y)
    return ScalarField(
        f"bump:x={x:g},y={y:g},w={w:g}",
        lambda t: np.exp(-np.abs(t - c) ** 2 / w**2),
        sup_norm=1.0,
        smooth=True,
        real=True,
    )


def poly(m: int, n: int):
    return ScalarField(
        f"poly:m={m},n={n}", lambda t: t**m * np.conj(t) ** n, sup_norm=1.0, smooth=True, real=(m == n)
    )


class SampledField:
    """Values on a polar grid, interpolated bilinearly in ``(r, theta)``.

    ``radii`` must be increasing; the angular grid is uniform and periodic.
    Points outside the outermost ring are refused rather than extrapolated.
    """

    def __init__(self, radii, values, label="sampled"):
        self.radii = np.asarray(radii, dtype=float)
        self.values = np.asarray(values, dtype=complex)
        if self.values.shape[0] != self.radii.size:
            raise FieldError("values must have one row per radius")
        if np.any(np.diff(self.radii) <= 0):
            raise FieldError("radii must be strictly increasing")
        self.n_theta = self.values.shape[1]
        self.label = label

    @classmethod
    def from_field(cls, f: ScalarField, n_radii: int = 64, n_theta: int = 128):
        radii = 0.5 * (1 - np.cos(np.linspace(0, math.pi, n_radii)))
        theta = 2 * math.pi * np.arange(n_theta) / n_theta
        pts = radii[:, None] * np.exp(1j * theta)[None, :]
        return cls(radii, f(pts), label=f"sampled({f.label})")

    def __call__(self, tau):
        tau = np.asarray(tau, dtype=complex)
        r = np.abs(tau)
        if np.any(r > self.radii[-1] + 1e-12):
            raise FieldError(f"point outside outermost ring r = {self.radii[-1]}")
        if np.any(r < self.radii[0] - 1e-12):
            raise FieldError(f"point inside innermost ring r = {self.radii[0]}")
        th = np.mod(np.angle(tau), 2 * math.pi) * self.n_theta / (2 * math.pi)
        j0 = np.floor(th).astype(int) % self.n_theta
        j1 = (j0 + 1) % self.n_theta
        ft = th - np.floor(th)
        i1 = np.clip(np.searchsorted(self.radii, r), 1, self.radii.size - 1)
        i0 = i1 - 1
        fr = np.clip((r - self.radii[i0]) / (self.radii[i1] - self.radii[i0]), 0, 1)
        v = self.values
        low = v[i0, j0] * (1 - ft) + v[i0, j1] * ft
        high = v[i1, j0] * (1 - ft) + v[i1, j1] * ft
        return low * (1 - fr) + high * fr

    def as_field(self) -> ScalarField:
        sup = float(np.max(np.abs(self.values)))
        return ScalarField(self.label, self, kind="sampled-grid", sup_norm=sup)


def _params(text: str) -> dict:
    out = {}
    for part in filter(None, text.split(",")):
        key, sep, val = part.partition("=")
        if not sep:
            raise FieldError(f"malformed parameter {part!r}")
        out[key.strip()] = float(val)
    return out


def _take(params: dict, *names):
    extra = set(params) - set(names)
    if extra:
        raise FieldError(f"unknown parameter(s) {sorted(extra)}")
    missing = [n for n in names if n not in params]
    if missing:
        raise FieldError(f"missing parameter(s) {missing}")
    return [params[n] for n in names]


def get(field_id: str) -> ScalarField:
    """Look up a builtin field by its catalog id."""
    field_id = field_id.strip()
    if field_id == "smooth:gauss":
        return gauss()
    name, _, rest = field_id.partition(":")
    params = _params(rest)
    if name in ("zero", "one", "example2"):
        _take(params)
        return {"zero": zero, "one": one, "example2": example2}[name]()
    if name == "example1":
        (alpha,) = _take(params, "alpha")
        return example1(alpha)
    if name == "power":
        (s,) = _take(params, "s")
        return power(s)
    if name == "angular":
        (k,) = _take(params, "k")
        return angular(int(k))
    if name == "poly":
        m, n = _take(params, "m", "n")
        return poly(int(m), int(n))
    if name == "bump":
        x, y, w = _take(params, "x", "y", "w")
        return bump(x, y, w)
    raise FieldError(f"unknown field id {field_id!r}")


CATALOG_IDS = ("zero", "one", "example1:alpha=<v>", "example2", "power:s=<v>", "smooth:gauss",
               "angular:k=<int>", "poly:m=<int>,n=<int>", "bump:x=<v>,y=<v>,w=<v>")

# Nonzero test family used for empirical operator-norm bounds.
FAMILY_IDS = (
    "one",
    "example2",
    "smooth:gauss",
    "power:s=0.25",
    "power:s=0.5",
    "power:s=0.75",
    "power:s=0.9",
    "example1:alpha=0.5",
    "example1:alpha=1",
    "poly:m=1,n=0",
    "poly:m=0,n=1",
    "poly:m=2,n=0",
    "poly:m=1,n=1",
    "poly:m=0,n=3",
    "angular:k=1",
    "angular:k=3",
    "angular:k=-1",
    "bump:x=0.5,y=0,w=0.2",
    "bump:x=-0.3,y=0.6,w=0.15",
    "bump:x=0,y=-0.85,w=0.1",
)


def family(size: int = 20) -> list[ScalarField]:
    if not 1 <= size <= len(FAMILY_IDS):
        raise FieldError(f"family size must be in 1..{len(FAMILY_IDS)}")
    return [get(i) for i in FAMILY_IDS[:size]]
