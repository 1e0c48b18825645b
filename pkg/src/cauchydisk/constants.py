"""The integral constants I_beta, J_beta, C_q and the L^p -> L^q norm bound.

Series evaluations live here; the defining disk/plane integrals are also
exposed (``*_integral``) so the two routes can be compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import as_point
from .quadrature import LocalIntegrand, QuadResult, SingularitySpec, integrate_disk, integrate_plane_split, offset
from .series import HypergeomParams, hypergeom

CQ_RANGE = (1.05, 1.95)


@dataclass(frozen=True)
class ConstantReport:
    exact_value: float
    uniform_bound: float
    tail_bound: float
    parameters: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "exact_value": self.exact_value,
            "uniform_bound": self.uniform_bound,
            "tail_bound": self.tail_bound,
            **self.parameters,
        }


def _check_beta(beta):
    if not 1 <= beta < 2:
        raise ValueError(f"beta = {beta} outside [1, 2)")


def i_beta_bound(beta: float) -> float:
    _check_beta(beta)
    return 2 ** (1 + beta / 2) * math.gamma(1 + beta) * math.gamma(2 - beta)


def j_beta_bound(beta: float) -> float:
    _check_beta(beta)
    return 2 / (2 - beta) + 1 / math.gamma(2 - beta)


def i_beta(beta: float, z, tol: float = 1e-12) -> ConstantReport:
    """``I_beta(z)`` from its power series in ``|z|^2``.

    ``(1-|z|^2)^(2-beta) Gamma(1+beta) sum (n+1)^2 Gamma(n+1-beta/2)/Gamma(n+2+beta/2) |z|^(2n)``,
    summed as a 3F2 with numerator parameters (2, 2, 1 - beta/2).
    """
    _check_beta(beta)
    z = as_point(z)
    x = abs(z) ** 2
    pref = (1 - x) ** (2 - beta) * math.exp(
        math.lgamma(1 + beta) + math.lgamma(1 - beta / 2) - math.lgamma(2 + beta / 2)
    )
    s = hypergeom(HypergeomParams((2.0, 2.0, 1 - beta / 2), (1.0, 2 + beta / 2), x), tol / pref)
    return ConstantReport(
        float(pref * s.sum), i_beta_bound(beta), pref * s.tail_bound, {"beta": beta, "z": [z.real, z.imag]}
    )


def j_beta(beta: float, w, tol: float = 1e-12) -> ConstantReport:
    """``J_beta(w)``: ``2(1-|w|^2)^(2-beta) sum ((2-beta)_n/n!)^2 |w|^(2n)/(2n+2-beta)``."""
    _check_beta(beta)
    w = as_point(w)
    x = abs(w) ** 2
    pref = (1 - x) ** (2 - beta) / (1 - beta / 2)
    s = hypergeom(HypergeomParams((2 - beta, 2 - beta, 1 - beta / 2), (1.0, 2 - beta / 2), x), tol / pref)
    return ConstantReport(
        float(pref * s.sum), j_beta_bound(beta), pref * s.tail_bound, {"beta": beta, "w": [w.real, w.imag]}
    )


def _weighted_kernel(beta, z, w_is_variable):
    zc = np.conj(z)

    def f(tau, center, delta):
        d = np.abs(offset(tau, center, delta, z))
        if w_is_variable:
            return ((1 - np.abs(tau) ** 2) / (d * np.abs(1 - zc * tau))) ** beta
        return ((1 - abs(z) ** 2) / (d * np.abs(1 - np.conj(tau) * z))) ** beta

    return LocalIntegrand(f)


def i_beta_integral(beta: float, z, tol: float = 1e-8) -> QuadResult:
    """Direct quadrature of ``int ((1-|w|^2)/(|z-w||1-conj(z) w|))^beta dA(w)``."""
    _check_beta(beta)
    z = as_point(z)
    return integrate_disk(_weighted_kernel(beta, z, True), [SingularitySpec(z, beta)], tol)


def j_beta_integral(beta: float, w, tol: float = 1e-8) -> QuadResult:
    """Direct quadrature of ``int ((1-|w|^2)/(|z-w||1-conj(z) w|))^beta dA(z)``."""
    _check_beta(beta)
    w = as_point(w)
    return integrate_disk(_weighted_kernel(beta, w, False), [SingularitySpec(w, beta)], tol, boundary_grading=False)


def lemma_chain(n: int, beta: float) -> tuple[float, float]:
    """Both sides of ``(n+1)^2 G(n+1-b/2)/G(n+2+b/2) <= 2^(1+b/2) G(n+2-b)/n!``."""
    lhs = (n + 1) ** 2 * math.exp(math.lgamma(n + 1 - beta / 2) - math.lgamma(n + 2 + beta / 2))
    rhs = 2 ** (1 + beta / 2) * math.exp(math.lgamma(n + 2 - beta) - math.lgamma(n + 1))
    return lhs, rhs


def conjugate(p: float) -> float:
    return p / (p - 1)


def thm1_norm_bound(p: float) -> float:
    """Upper bound for the L^p -> L^q norm of the Cauchy transform, 3/2 < p < 2."""
    if not 1.5 < p < 2:
        raise ValueError(f"p = {p}: the L^p -> L^q bound is stated only for 3/2 < p < 2")
    q = conjugate(p)
    r = q / p
    return (2**1.5 * (2 / (2 - r) + 1 / math.gamma(2 - r))) ** (1 / q)


def thm1_product_form(p: float) -> float:
    """``I_1`` bound times ``J_{q/p}`` bound, the q-th power of :func:`thm1_norm_bound`."""
    q = conjugate(p)
    return i_beta_bound(1.0) * j_beta_bound(q / p)


def c_q_parts(q: float, tol: float = 1e-12):
    """Interior and folded-exterior pieces ``(A, B)`` of ``int_C |xi|^-q |1-xi|^-q dA``."""
    if not 1 < q < 2:
        raise ValueError(f"q = {q} outside (1, 2)")
    a = hypergeom(HypergeomParams((1 - q / 2, q / 2, q / 2), (1.0, 2 - q / 2), 1.0), tol)
    b = hypergeom(HypergeomParams((q - 1, q / 2, q / 2), (1.0, q), 1.0), tol)
    return a, b


def c_q(q: float, tol: float = 1e-12, allow_extreme: bool = False) -> ConstantReport:
    """``C_q = (A + B)^(1/q)`` with both pieces summed as 3F2 at unit argument."""
    lo, hi = CQ_RANGE
    if not 1 < q < 2:
        raise ValueError(f"q = {q} outside (1, 2)")
    if not allow_extreme and not lo <= q <= hi:
        raise ValueError(f"q = {q} outside [{lo}, {hi}]; pass allow_extreme=True to go closer to the poles")
    a, b = c_q_parts(q, tol)
    A = a.sum / (1 - q / 2)
    B = b.sum / (q - 1)
    total = A + B
    tail = a.tail_bound / (1 - q / 2) + b.tail_bound / (q - 1)
    value = total ** (1 / q)
    # d(total^(1/q)) = total^(1/q - 1)/q d(total)
    return ConstantReport(
        float(value),
        math.inf,
        float(value / total / q * tail),
        {"q": q, "A": float(A), "B": float(B), "integral": float(total), "terms": [a.terms_used, b.terms_used]},
    )


def c_q_integral(q: float, tol: float = 1e-9) -> tuple[float, QuadResult]:
    """``C_q`` from direct 2-D quadrature over the plane; returns ``(C_q, raw integral)``."""
    res = integrate_plane_split(None, q, tol)
    return float(res.value.real ** (1 / q)), res
