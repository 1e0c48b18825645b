import numpy as np
import pytest

from cauchydisk import fields as F
from cauchydisk import operators as O
from cauchydisk.geometry import DiskError

ZS = np.array([0.0, 0.3, -0.5j, 0.6 + 0.3j, -0.85 + 0.1j])


def test_constant_field_closed_forms():
    g = F.one()
    assert np.max(np.abs(O.green_potential(g, ZS) - (np.abs(ZS) ** 2 - 1))) < 1e-9
    assert np.max(np.abs(O.cauchy_transform(g, ZS) - np.conj(ZS))) < 1e-9
    assert np.max(np.abs(O.conj_cauchy_transform(g, ZS) - ZS)) < 1e-9


def test_zero_field():
    assert O.cauchy_transform(F.zero(), 0.3) == 0
    assert O.evaluate_one("green_potential", F.zero(), 0.1).error_estimate == 0


def test_example2_closed_forms():
    g = F.example2()
    z = ZS[1:]
    assert np.max(np.abs(O.cauchy_integral(g, z) + z * np.log(np.abs(z) ** 2))) < 1e-7
    assert np.max(np.abs(O.j0star(g, z) - z / 2)) < 1e-7
    assert np.max(np.abs(O.cauchy_transform(g, z) - (z / 2 + z * np.log(np.abs(z) ** 2)))) < 1e-7


def test_values_at_half():
    g = F.example2()
    assert O.cauchy_integral(g, 0.5) == pytest.approx(0.5 * np.log(4), abs=1e-7)
    assert O.j0star(g, 0.5) == pytest.approx(0.25, abs=1e-7)


@pytest.mark.parametrize("fid", ["smooth:gauss", "poly:m=2,n=1", "power:s=0.5", "angular:k=3", "example1:alpha=0.5"])
def test_decomposition_identity(fid):
    g = F.get(fid)
    for z in ZS[1:]:
        c = O.evaluate_one("cauchy", g, z)
        j = O.evaluate_one("j0star", g, z)
        k = O.evaluate_one("cauchy_integral", g, z)
        slack = 3 * (c.error_estimate + j.error_estimate + k.error_estimate) + 1e-12
        assert abs(c.value - (j.value - k.value)) <= max(slack, 1e-8)


def test_cauchy_is_derivative_of_potential():
    g = F.gauss()
    h = 1e-4
    for z in (0.2 + 0.1j, -0.4j, 0.7):
        u = lambda w: O.green_potential(g, w, tol=1e-12)
        dz = ((u(z + h) - u(z - h)) - 1j * (u(z + 1j * h) - u(z - 1j * h))) / (4 * h)
        c = O.cauchy_transform(g, z, tol=1e-12)
        assert abs(dz - c) / abs(c) < 1e-3


def test_potential_solves_poisson():
    g = F.gauss()
    z, h = 0.1 + 0.2j, 1e-2
    u = lambda w: O.green_potential(g, w, tol=1e-13)
    lap = (u(z + h) + u(z - h) + u(z + 1j * h) + u(z - 1j * h) - 4 * u(z)) / h**2
    assert abs(lap / 4 - g(z)) < 1e-3


def test_real_field_conjugate_symmetry():
    g = F.gauss()
    for z in ZS:
        assert abs(O.conj_cauchy_transform(g, z) - np.conj(O.cauchy_transform(g, z))) < 1e-9


def test_gradient_modulus_constant():
    assert O.gradient_modulus(F.one(), 0.5) == pytest.approx(1.0, abs=1e-9)


def test_threads_deterministic(monkeypatch):
    g = F.example2()
    serial = O.cauchy_transform(g, ZS)
    monkeypatch.setenv(O.THREADS_ENV, "4")
    assert np.array_equal(O.cauchy_transform(g, ZS), serial)


def test_rejects_points_outside():
    with pytest.raises(DiskError):
        O.cauchy_transform(F.one(), 1.0)
    with pytest.raises(ValueError):
        O.apply("laplace", F.one(), 0.1)


def test_array_shape_preserved():
    z = ZS[:4].reshape(2, 2)
    assert O.green_potential(F.one(), z).shape == (2, 2)
    assert isinstance(O.green_potential(F.one(), 0.1), complex)
