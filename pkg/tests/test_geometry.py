import numpy as np
import pytest
from hypothesis import given, settings

from cauchydisk.geometry import (
    DiskError,
    DiskPoint,
    cauchy,
    cauchy_kernel,
    green,
    green_kernel,
    mobius,
    one_minus_rho_squared,
    pseudo_hyperbolic,
)

from .conftest import disk_points


def test_disk_point_rejects_outside():
    for bad in (1.0, 1j, 0.6 + 0.8j, 2, complex(np.nan, 0)):
        with pytest.raises(DiskError):
            DiskPoint(bad)
    assert DiskPoint(0.5j).value == 0.5j


def test_mobius_fixes_and_swaps():
    a = 0.3 - 0.4j
    assert mobius(a, a) == 0
    assert np.isclose(mobius(a, 0), a)


@given(disk_points(), disk_points())
def test_mobius_involution(a, z):
    assert abs(mobius(a, mobius(a, z)) - z) < 1e-12


@given(disk_points(), disk_points(), disk_points())
def test_pseudo_hyperbolic_mobius_invariant(a, z, w):
    lhs = pseudo_hyperbolic(mobius(a, z), mobius(a, w))
    assert abs(lhs - pseudo_hyperbolic(z, w)) < 1e-10


@given(disk_points(), disk_points())
def test_rho_identity(z, w):
    rho = pseudo_hyperbolic(z, w)
    assert abs((1 - rho**2) - one_minus_rho_squared(z, w)) < 1e-12
    assert 0 <= rho < 1


@given(disk_points(), disk_points())
def test_green_symmetric_and_negative(z, tau):
    if abs(z - tau) < 1e-6:
        return
    g1, g2 = green(z, tau), green(tau, z)
    assert abs(g1 - g2) < 1e-10 * max(1, abs(g1))
    assert g1 < 0


def test_green_vanishes_on_circle():
    tau = np.exp(1j * np.linspace(0, 6, 7))
    assert np.max(np.abs(green(0.4 + 0.1j, tau))) < 1e-12


def test_green_at_origin():
    assert np.isclose(green(0, 0.5), np.log(0.25))


@settings(max_examples=30)
@given(disk_points(0.8), disk_points(0.8))
def test_cauchy_is_z_derivative_of_green(z, tau):
    if abs(z - tau) < 1e-2:
        return
    h = 1e-6
    gx = (green(z + h, tau) - green(z - h, tau)) / (2 * h)
    gy = (green(z + 1j * h, tau) - green(z - 1j * h, tau)) / (2 * h)
    dz = (gx - 1j * gy) / 2
    assert abs(dz - cauchy(z, tau)) < 1e-5 * max(1, abs(dz))


def test_coincident_points():
    assert green(0.2, 0.2) == -np.inf
    assert np.isnan(cauchy(0.2, 0.2))
    assert not green_kernel(0.2, 0.2).finite
    assert not cauchy_kernel(0.2, 0.2).finite
    assert green_kernel(0.2, 0.3).finite


def test_vectorised_shapes():
    z = np.array([[0.1, 0.2], [0.3j, -0.4]])
    assert green(z, 0.5).shape == (2, 2)
    assert pseudo_hyperbolic(z, 0).shape == (2, 2)
    assert np.allclose(pseudo_hyperbolic(z, 0), np.abs(z))
