import math

import numpy as np
import pytest

from cauchydisk import fields as F


def test_catalog_lookup():
    for fid in F.FAMILY_IDS + ("zero",):
        assert F.get(fid).label == fid
    assert F.get("example1:alpha=0.5").sup_norm == math.inf
    assert F.get("example2").sup_norm == 1.0


@pytest.mark.parametrize("bad", ["nope", "power:s=2.5", "power", "power:t=1", "poly:m=1", "one:x=1",
                                 "example1:alpha=0.1", "bump:x=1,y=2"])
def test_catalog_rejects(bad):
    with pytest.raises(F.FieldError):
        F.get(bad)


def test_example2_values():
    g = F.example2()
    z = np.array([0.5, 0.5j, -0.3 + 0.4j])
    assert np.allclose(g(z), z / np.conj(z))
    assert g(0j) == 0


def test_example1_is_laplacian_of_u():
    alpha = 0.7
    g = F.example1(alpha)
    u = lambda t: t ** (1 / 3) * (1 - np.abs(t) ** (2 * alpha))
    z, h = 0.4 + 0.2j, 1e-3
    lap = (u(z + h) + u(z - h) + u(z + 1j * h) + u(z - 1j * h) - 4 * u(z)) / h**2
    assert abs(lap - g(z)) / abs(g(z)) < 1e-4


def test_arithmetic():
    g = 3 * F.gauss() + F.one()
    assert g.sup_norm == 4 and g.smooth and g.real
    assert np.isclose(g(0.3), 4.0)
    assert F.poly(2, 0).conj()(0.5j) == pytest.approx(np.conj((0.5j) ** 2))


def test_sampled_field_interpolates_and_refuses_outside():
    sf = F.SampledField.from_field(F.poly(1, 1), n_radii=64, n_theta=128)
    z = np.array([0.3 + 0.1j, -0.5j])
    assert np.max(np.abs(sf(z) - np.abs(z) ** 2)) < 1e-3
    small = F.SampledField(np.linspace(0, 0.5, 5), np.ones((5, 8)))
    with pytest.raises(F.FieldError):
        small(0.7)
    with pytest.raises(F.FieldError):
        F.SampledField([0.1, 0.05], np.ones((2, 4)))
    assert sf.as_field().kind == "sampled-grid"


def test_family_sizes():
    assert len(F.family()) == 20
    with pytest.raises(F.FieldError):
        F.family(21)
