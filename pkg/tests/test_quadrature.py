import math

import numpy as np
import pytest
from scipy.special import erf

from shallowwell.errors import InvalidGridSpec, LengthMismatch
from shallowwell.potential import Potential
from shallowwell.quadrature import build_grid, contract, default_grid, integrate


def test_build_grid_validation():
    with pytest.raises(InvalidGridSpec):
        build_grid(10.0, 128, 0)
    with pytest.raises(InvalidGridSpec):
        build_grid(10.0, 128, 17)
    with pytest.raises(InvalidGridSpec):
        build_grid(10.0, 0, 8)
    with pytest.raises(InvalidGridSpec):
        build_grid(-1.0, 128, 8)


def test_grid_identity_on_spec():
    a = build_grid(10.0, 64, 8)
    b = build_grid(10.0, 64, 8)
    c = build_grid(10.0, 64, 6)
    assert a == b and hash(a) == hash(b)
    assert a != c


def test_integrate_gaussian_is_sqrt_pi():
    g = build_grid(10.0, 128, 8)
    val = integrate(g, np.exp(-g.nodes**2))
    assert val == pytest.approx(math.sqrt(math.pi), rel=1e-14)


def test_integrate_polynomial_exact_per_panel():
    g = build_grid(2.0, 16, 4)  # degree 2q-1 = 7 exact
    val = integrate(g, g.nodes**6)
    assert val == pytest.approx(2.0 * 2.0**7 / 7.0, rel=1e-14)
    assert integrate(g, g.nodes**7) == pytest.approx(0.0, abs=1e-15)


def test_integrate_length_mismatch():
    g = build_grid(2.0, 16, 4)
    with pytest.raises(LengthMismatch):
        integrate(g, np.ones(g.nodes.size + 1))


def test_default_grid_square_well_panel_alignment():
    for a in (1.0, 0.7):
        p = Potential.square_well(1.0, a=a)
        g = default_grid(p)
        # the discontinuities at +-a must fall on panel edges
        assert np.min(np.abs(g.edges - a)) < 1e-12
        assert np.min(np.abs(g.edges + a)) < 1e-12


def test_contract_even_kernel_matches_dense():
    p = Potential.gaussian(1.0)
    g = build_grid(8.0, 32, 6)
    f = np.cos(g.nodes)
    got = contract(g, p, 2, 1, f)
    x, w = g.nodes, g.weights
    dense = ((x[:, None] - x[None, :]) ** 2 * (w * p.evaluate(x) * x * f)[None, :]).sum(axis=1)
    assert np.max(np.abs(got - dense)) < 1e-12 * np.max(np.abs(dense))


def test_contract_odd_kernel_matches_closed_form():
    # integral of e^{-y^2} |x - y| dy = sqrt(pi) x erf(x) + e^{-x^2}
    p = Potential.gaussian(1.0)
    g = default_grid(p)  # P=128: kink handling must reach ~1e-13
    got = contract(g, p, 1, 0, np.ones_like(g.nodes))
    x = g.nodes
    exact = -(math.sqrt(math.pi) * x * erf(x) + np.exp(-(x**2)))
    assert np.max(np.abs(got - exact)) < 1e-12


def test_contract_cubic_kernel_matches_dense_plus_correction():
    # |x-y|^3 has a mild kink (third derivative); compare to a fine grid
    p = Potential.gaussian(1.0)
    coarse = build_grid(8.0, 64, 8)
    fine = build_grid(8.0, 512, 8)
    f_c = np.ones_like(coarse.nodes)
    f_f = np.ones_like(fine.nodes)
    vc = integrate(coarse, np.asarray(p.evaluate(coarse.nodes)) * contract(coarse, p, 3, 0, f_c))
    vf = integrate(fine, np.asarray(p.evaluate(fine.nodes)) * contract(fine, p, 3, 0, f_f))
    assert vc == pytest.approx(vf, rel=1e-10)
