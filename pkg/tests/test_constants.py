import math

import numpy as np
import pytest

from cauchydisk import constants as K


def test_i_beta_at_origin():
    assert K.i_beta(1.0, 0).exact_value == pytest.approx(4 / 3, abs=1e-14)
    assert K.i_beta_integral(1.0, 0).value.real == pytest.approx(4 / 3, abs=1e-9)


@pytest.mark.parametrize("beta", [1.0, 1.3, 1.6, 1.9])
@pytest.mark.parametrize("z", [0.3, 0.6 + 0.3j, 0.9])
def test_i_j_series_against_quadrature(beta, z):
    assert abs(K.i_beta(beta, z).exact_value - K.i_beta_integral(beta, z).value.real) < 1e-7
    assert abs(K.j_beta(beta, z).exact_value - K.j_beta_integral(beta, z).value.real) < 1e-7


@pytest.mark.parametrize("beta", np.linspace(1, 1.95, 9))
def test_uniform_bounds(beta):
    for z in (0, 0.5, 0.9, 0.99, 0.999j):
        i, j = K.i_beta(beta, z), K.j_beta(beta, z)
        assert 0 < i.exact_value <= i.uniform_bound
        assert 0 < j.exact_value <= j.uniform_bound


def test_j_beta_bound_example():
    rep = K.j_beta(1.9, 0.9)
    assert rep.uniform_bound == pytest.approx(2 / 0.1 + 1 / math.gamma(0.1))
    assert rep.exact_value < rep.uniform_bound


def test_beta_range_enforced():
    for bad in (0.9, 2.0):
        with pytest.raises(ValueError):
            K.i_beta(bad, 0.1)


def test_lemma_chain():
    for beta in np.linspace(1, 1.95, 17):
        for n in range(0, 1001, 7):
            lhs, rhs = K.lemma_chain(n, beta)
            assert lhs <= rhs * (1 + 1e-14)


def test_conjugate():
    for p in (1.2, 1.75, 3.0, 8.0):
        q = K.conjugate(p)
        assert abs(1 / p + 1 / q - 1) < 1e-14


def test_norm_bound_product_and_shape():
    for p in (1.55, 1.6, 1.75, 1.9, 1.99):
        assert K.thm1_norm_bound(p) == pytest.approx(K.thm1_product_form(p) ** (1 / K.conjugate(p)), rel=1e-13)
    assert K.thm1_norm_bound(1.6) > K.thm1_norm_bound(1.75)
    for bad in (1.5, 2.0):
        with pytest.raises(ValueError):
            K.thm1_norm_bound(bad)


def _gamma_closed_form(q):
    return math.gamma(1 - q / 2) ** 2 * math.gamma(q - 1) / (math.gamma(q / 2) ** 2 * math.gamma(2 - q))


@pytest.mark.parametrize("q", [1.05, 1.2, 1.5, 1.8, 1.95])
def test_c_q_series(q):
    rep = K.c_q(q)
    assert rep.exact_value == pytest.approx(_gamma_closed_form(q) ** (1 / q), rel=1e-10)
    assert rep.tail_bound < 1e-8 * rep.exact_value
    assert rep.parameters["A"] > 0 and rep.parameters["B"] > 0


def test_c_q_against_quadrature():
    q = 1.5
    oracle, res = K.c_q_integral(q)
    assert abs(K.c_q(q).exact_value - oracle) / oracle < 1e-8
    assert res.converged


def test_c_q_range():
    with pytest.raises(ValueError):
        K.c_q(1.99)
    assert K.c_q(1.99, allow_extreme=True).exact_value > K.c_q(1.95).exact_value
    with pytest.raises(ValueError):
        K.c_q(2.0, allow_extreme=True)


def test_c_q_convex_shape():
    qs = np.linspace(1.05, 1.95, 19)
    vals = np.array([K.c_q(q).exact_value for q in qs])
    assert np.all(np.diff(vals, 2) > 0)
    assert 0 < np.argmin(vals) < len(qs) - 1
