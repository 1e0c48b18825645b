import math

import numpy as np
import pytest

from cauchydisk import constants as K
from cauchydisk import fields as F
from cauchydisk import norms as N


def test_exponent_pair():
    pair = N.ExponentPair.from_p(1.75)
    assert abs(pair.q * (pair.p - 1) - pair.p) < 1e-14
    with pytest.raises(ValueError):
        N.ExponentPair.for_norm_bound(1.5)
    with pytest.raises(ValueError):
        N.ExponentPair.for_gradient_holder(2.0)
    assert N.ExponentPair.for_gradient_holder(4).q == pytest.approx(4 / 3)


def test_lp_norm_examples():
    assert N.lp_norm(F.one(), 2.7) == pytest.approx(1.0, abs=1e-12)
    assert N.lp_norm(F.power(1.0), 1.5) == pytest.approx(4 ** (2 / 3), rel=1e-9)
    assert N.lp_norm(F.power(0.5), 3.0) == pytest.approx((2 / 0.5) ** (1 / 3), rel=1e-9)


def test_lp_norm_rejects_nonintegrable():
    with pytest.raises(N.NonIntegrableError):
        N.lp_norm(F.power(1.0), 2.0)


def test_lp_norm_homogeneous_and_triangle(rng):
    fams = F.family()
    for _ in range(5):
        a, b = rng.choice(len(fams), 2, replace=False)
        f, g = fams[a], fams[b]
        if any(s.order > 0 for s in f.singularities + g.singularities):
            continue
        c = complex(rng.normal(), rng.normal())
        assert N.lp_norm(c * f, 1.8) == pytest.approx(abs(c) * N.lp_norm(f, 1.8), rel=1e-9)
        assert N.lp_norm(f + g, 1.8) <= N.lp_norm(f, 1.8) + N.lp_norm(g, 1.8) + 1e-9


def test_truncation_monotone():
    g = F.power(0.8)
    vals = [N.lp_norm(g, 1.5, exclude_radius=e) for e in (0.5, 0.1, 0.01)]
    assert vals[0] < vals[1] < vals[2] < N.lp_norm(g, 1.5)


def test_example1_g_norm_stable():
    g = F.example1(0.5)
    a = N.lp_norm(g, 1.5, tol=1e-9)
    b = N.lp_norm(g, 1.5, tol=1e-11)
    assert math.isfinite(a) and abs(a - b) / b < 1e-4


def test_example1_alpha_02_drift():
    # |g|^(3/2) ~ r^-1.9 near 0: the truncated integral moves by eps^0.1 terms, about 11% here
    g = F.example1(0.2)
    a = N.lp_power(g, 1.5, exclude_radius=2.0**-10)
    b = N.lp_power(g, 1.5, exclude_radius=2.0**-12)
    full = N.lp_power(g, 1.5)
    assert a < b < full
    assert (b - a) / b == pytest.approx((2.0**-1.0 - 2.0**-1.2) / (1 - 2.0**-1.2), rel=1e-6)


def test_transform_norm_of_one():
    pair = N.ExponentPair.for_norm_bound(1.75)
    # C[1] = conj(z): ||z||_q = (2/(q+2))^(1/q)
    ref = (2 / (pair.q + 2)) ** (1 / pair.q)
    assert N.lq_norm_of_transform(F.one(), pair) == pytest.approx(ref, rel=1e-9)
    assert N.lq_norm_of_transform(F.zero(), pair) == 0
    assert N.operator_norm_lower_bound(pair, [F.one()]) == pytest.approx(ref, rel=1e-9)


def test_ratio_scale_invariant():
    pair = N.ExponentPair.for_norm_bound(1.75)
    g = F.power(1.0)
    r1 = N.norm_ratios(pair, [g])[0]
    r3 = N.norm_ratios(pair, [3 * g])[0]
    assert abs(r1 - r3) < 1e-12 * r1
    assert r1 < K.thm1_norm_bound(1.75)


def test_empty_family():
    with pytest.raises(ValueError):
        N.operator_norm_lower_bound(N.ExponentPair.from_p(1.75), [])


def test_sampler_pairs():
    s = N.PairSampler(seed=3)
    z, w = s.pairs()
    assert np.all(np.abs(z - w) >= 1e-8)
    assert np.all(np.abs(z) < 1) and np.all(np.abs(w) < 1)
    z2, w2 = s.pairs()
    assert np.array_equal(z, z2) and np.array_equal(w, w2)
    zd, wd = s.doubled().pairs()
    assert set(zip(z, w)) <= set(zip(zd, wd))
    k = s.n_uniform * (s.n_uniform - 1) // 2
    near = np.abs(z - w)[k:k + s.n_near]
    assert np.all((near >= 1e-6 * 0.999) & (near <= 1e-2 * 1.001))


def test_holder_identity():
    rep = N.holder_quotient(lambda z: z, 1.0)
    assert rep.quotient_sup == pytest.approx(1.0, abs=1e-12)
    assert rep.pair_count == 64 * 63 // 2 + 64


def test_holder_cube_root_stable():
    # radial profile: z^(1/3) itself jumps across the branch cut
    f = lambda z: np.abs(z) ** (1 / 3) * (1 - np.abs(z))
    _, _, ratio = N.holder_stability(f, 1 / 3)
    assert ratio <= 1.1


def test_branch_cut_detected():
    f = lambda z: np.asarray(z, dtype=complex) ** (1 / 3) * (1 - np.abs(z))
    a, b, ratio = N.holder_stability(f, 1 / 3)
    assert b.quotient_sup >= a.quotient_sup and ratio > 1.1


def test_holder_lipschitz_failure():
    def f(z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(z == 0, 0, -z * np.log(np.abs(z) ** 2))

    radii = [2.0**-k for k in range(2, 14)]
    quot = [abs(f(r) - 0) / r for r in radii]
    fit = N.log_growth_fit(radii, quot)
    assert fit.logarithmic and fit.slope == pytest.approx(2.0, rel=1e-9)
    s = N.PairSampler(seed=1)
    assert N.holder_quotient(f, 1.0, s.doubled()).quotient_sup >= N.holder_quotient(f, 1.0, s).quotient_sup


def test_grad_holder():
    rep, bound = N.grad_holder_quotient(F.zero(), 0.5)
    assert rep.quotient_sup == 0 and bound == 0
    rep, bound = N.grad_holder_quotient(F.one(), 0.5)
    assert bound == pytest.approx(2 * K.c_q(4 / 3).exact_value)
    assert rep.quotient_sup <= bound


def test_log_growth_fit():
    eps = [2.0**-k for k in range(4, 13)]
    fit = N.log_growth_fit(eps, [3 * math.log(1 / e) + 1 for e in eps])
    assert fit.slope == pytest.approx(3) and fit.r2 == pytest.approx(1)
    flat = N.log_growth_fit(eps, [1 - e for e in eps])
    assert not flat.logarithmic
