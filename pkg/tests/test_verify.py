"""Independent geometric and analytic verification oracles."""

import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coulombstar.errors import GateViolation, PoleOnCircle
from coulombstar.radii import radius_f, radius_g, radius_phi
from coulombstar.rayleigh import rayleigh_Z, rayleigh_Ztilde
from coulombstar.specfun import CoulombParams
from coulombstar.verify import (boundary_image, companion_order,
                                dini_rayleigh_oracle, spirallike_scan,
                                starlike_scan, zero_sum_oracle)

RF_HALF = 0.94077056394973735364900174324614
FIG1_T0 = 0.58814635401704561985200998438744   # [sqrt(r) J0(r)]^2 at RF_HALF


def test_starlike_scan_brackets_radius_f():
    p = CoulombParams(-0.5, 0.0)
    below = starlike_scan("f", 0.999 * RF_HALF, params=p)
    above = starlike_scan("f", 1.001 * RF_HALF, params=p)
    assert below.min_real_part > 0.0
    assert above.min_real_part < 0.0
    assert below.grid_size == 1024
    assert 0.0 <= below.argmin_angle < 2 * math.pi


def test_starlike_scan_minimum_on_real_axis():
    # for real parameters the witness minimum sits on the real axis
    p = CoulombParams(2.0, -1.0)
    r = 0.99 * radius_f(2.0, -1.0).value
    rep = starlike_scan("f", r, params=p, grid_size=2048)
    angle = min(rep.argmin_angle, 2 * math.pi - rep.argmin_angle)
    assert angle < 0.02 or abs(rep.argmin_angle - math.pi) < 0.02


def test_starlike_scan_beta_families():
    rg = radius_g(1.0, -0.5).value
    p = CoulombParams(1.0, -0.5)
    assert starlike_scan("g", 0.99 * rg, params=p).min_real_part > 0
    assert starlike_scan("g", 1.01 * rg, params=p).min_real_part < 0
    rphi = radius_phi(0.3, 0.2, 0.5).value
    assert starlike_scan("phi", 0.99 * rphi, nu=0.3,
                         alpha=0.2).min_real_part > 0.5
    assert starlike_scan("phi", 1.01 * rphi, nu=0.3,
                         alpha=0.2).min_real_part < 0.5


def test_scan_guards():
    p = CoulombParams(0.0, 0.0)             # S = sin z / z, first zero pi
    with pytest.raises((GateViolation, PoleOnCircle)):
        starlike_scan("g", math.pi, params=p)
    with pytest.raises(GateViolation):
        starlike_scan("g", 4.0, params=p)   # real-axis zero inside
    with pytest.raises(GateViolation):
        starlike_scan("f", 1.0)             # params missing
    with pytest.raises(GateViolation):
        starlike_scan("phi", 1.0, nu=0.5)   # alpha missing


def test_companion_order_values_and_gate():
    assert companion_order(0.2 + 0.1j) == pytest.approx(
        0.19282032302755091741097853660235, abs=1e-15)
    with pytest.raises(GateViolation):
        companion_order(-0.5 + 0.0j)        # Re[L(L+1)] = -1/4


@given(st.floats(-0.49, 10.0, allow_nan=False))
def test_companion_order_fixes_real_orders(L):
    assert companion_order(complex(L, 0.0)) == pytest.approx(
        L, rel=1e-12, abs=1e-12)


def test_spirallike_scan_brackets_companion_radius():
    Lc = 0.2 + 0.1j
    r = radius_f(companion_order(Lc), 0.0).value
    assert spirallike_scan(Lc, 0.0, 0.99 * r).min_real_part > 0
    assert spirallike_scan(Lc, 0.0, 1.01 * r).min_real_part < 0
    rep = spirallike_scan(Lc, 0.0, 0.5 * r)
    assert rep.witness_rotation == pytest.approx(
        math.atan2(0.1, 1.2))               # default theta = arg(L+1)


def test_spirallike_gates():
    with pytest.raises(GateViolation):
        spirallike_scan(-2.0 + 0.0j, 0.0, 1.0)
    with pytest.raises(GateViolation):
        spirallike_scan(5.0j, 0.0, 1.0)     # |arg(L+1)| >= pi/4


def test_boundary_image_figures():
    p = CoulombParams(-0.5, 0.0)
    pts = boundary_image("f", RF_HALF, 256, params=p)
    assert len(pts) == 256
    assert pts[0] == pytest.approx(FIG1_T0, abs=1e-13)
    # closed and conjugate-symmetric (real coefficients)
    assert abs(pts[-1] - pts[0]) < abs(pts[1] - pts[0]) * 2.0
    for k in (1, 7, 100):
        assert pts[-k] == pytest.approx(pts[k].conjugate(), rel=1e-10)
    # figure-2 parameters: image of the pi/2 circle under sin
    pg = CoulombParams(0.0, 0.0)
    pts2 = boundary_image("g", math.pi / 2, 64, params=pg)
    assert pts2[0] == pytest.approx(1.0, abs=1e-14)
    t = 2 * math.pi * 5 / 64
    z = (math.pi / 2) * complex(math.cos(t), math.sin(t))
    import cmath
    assert pts2[5] == pytest.approx(cmath.sin(z), rel=1e-12)


def test_zero_sum_oracle_matches_exact_tables():
    got = zero_sum_oracle(CoulombParams(2.0, 0.0), k=2, n_zeros=200)
    assert got == pytest.approx(1.0 / 7.0, abs=1e-6)
    got4 = zero_sum_oracle(CoulombParams(2.0, 0.0), k=4, n_zeros=120)
    exact4 = rayleigh_Z(CoulombParams(Fr(2), Fr(0)), 4, exact=True)[4]
    assert got4 == pytest.approx(float(exact4), abs=1e-8)
    # eta < 0 sums both signed families
    got_eta = zero_sum_oracle(CoulombParams(2.0, -1.0), k=2, n_zeros=200)
    assert got_eta == pytest.approx(10.0 / 63.0, abs=1e-6)
    # derivative zeros
    gotp = zero_sum_oracle(CoulombParams(0.5, 0.0), k=2, which="Fprime",
                           n_zeros=200)
    assert gotp == pytest.approx(7.0 / 12.0, abs=1e-6)


def test_zero_sum_oracle_gates():
    p = CoulombParams(1.0, 0.0)
    with pytest.raises(ValueError):
        zero_sum_oracle(p, k=3)
    with pytest.raises(ValueError):
        zero_sum_oracle(p, which="G")
    with pytest.raises(ValueError):
        zero_sum_oracle(p, n_zeros=4)
    with pytest.raises(GateViolation):
        zero_sum_oracle(CoulombParams(1.0, 0.5), k=2)
    with pytest.raises(GateViolation):
        zero_sum_oracle(CoulombParams(0.2 + 0.1j, 0.0), k=2)


def test_dini_rayleigh_oracle_exact():
    assert dini_rayleigh_oracle(1, 1) == Fr(1, 4)
    # cross-check against the F' recurrence through the Bessel reduction:
    # F'_{L,0} zeros = Dini zeros for nu = L + 1/2, H = 1/2 (both signs)
    assert 2 * dini_rayleigh_oracle(1, Fr(1, 2)) == \
        rayleigh_Ztilde(CoulombParams(Fr(1, 2), Fr(0)), 2, exact=True)[2]
    assert 2 * dini_rayleigh_oracle(0, Fr(1, 2)) == \
        rayleigh_Ztilde(CoulombParams(Fr(-1, 2), Fr(0)), 2, exact=True)[2]
    with pytest.raises(GateViolation):
        dini_rayleigh_oracle(-2, 1)
    with pytest.raises(GateViolation):
        dini_rayleigh_oracle(1, -1)         # nu + H = 0


@settings(deadline=None, max_examples=8)
@given(st.floats(0.0, 3.0), st.floats(-1.5, 0.0))
def test_zero_sum_oracle_tracks_recurrence(L, eta):
    p = CoulombParams(L, eta)
    rec = float(rayleigh_Z(CoulombParams(L, eta), 2, exact=False)[2])
    ode = zero_sum_oracle(p, k=2, n_zeros=80)
    assert ode == pytest.approx(rec, abs=5e-5)
