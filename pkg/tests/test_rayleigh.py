"""Zero power-sum recurrences, sandwich bounds, Laurent coefficients."""

import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coulombstar.errors import GateViolation, RegionWarning
from coulombstar.exact import EtaPolynomial
from coulombstar.rayleigh import (euler_rayleigh_bounds, gen_coeffs_a,
                                  rayleigh_Z, rayleigh_Ztilde, zeta_coeffs,
                                  zeta_laurent_eval)
from coulombstar.specfun import CoulombParams


def test_Z_first_sum_closed_form():
    # Z^(2) = (1 + eta^2/(L+1)^2)/(2L+3)
    assert rayleigh_Z(CoulombParams(Fr(1), Fr(0)), 2, exact=True)[2] == \
        Fr(1, 5)
    assert rayleigh_Z(CoulombParams(Fr(2), Fr(0)), 2, exact=True)[2] == \
        Fr(1, 7)
    assert rayleigh_Z(CoulombParams(Fr(2), Fr(-1)), 2, exact=True)[2] == \
        Fr(10, 63)
    assert rayleigh_Z(CoulombParams(Fr(5), Fr(-1)), 2, exact=True)[2] == \
        Fr(37, 468)


@given(st.fractions(min_value=Fr(-1, 2), max_value=6, max_denominator=8),
       st.fractions(min_value=-3, max_value=3, max_denominator=8))
@settings(max_examples=40)
def test_Z2_matches_formula(L, eta):
    got = rayleigh_Z(CoulombParams(L, eta), 2, exact=True)[2]
    assert got == (1 + eta * eta / (L + 1) ** 2) / (2 * L + 3)


def test_Ztilde_tables_exact():
    t = rayleigh_Ztilde(CoulombParams(Fr(1, 2), Fr(0)), 6, exact=True)
    assert {k: t[k] for k in range(2, 7)} == {
        2: Fr(7, 12), 3: Fr(0), 4: Fr(3, 32), 5: Fr(0), 6: Fr(269, 13824)}
    t2 = rayleigh_Ztilde(CoulombParams(Fr(2), Fr(-1)), 6, exact=True)
    assert {k: t2[k] for k in range(2, 7)} == {
        2: Fr(157, 567), 3: Fr(232, 5103), 4: Fr(6154, 321489),
        5: Fr(33941, 5786802), 6: Fr(4417013, 2005126893)}


def test_float_mode_agrees_with_exact():
    pe = CoulombParams(Fr(2), Fr(-1))
    pf = CoulombParams(2.0, -1.0)
    te = rayleigh_Ztilde(pe, 6, exact=True)
    tf = rayleigh_Ztilde(pf, 6, exact=False)
    for k in range(2, 7):
        assert tf[k] == pytest.approx(float(te[k]), rel=1e-12)
    ze = rayleigh_Z(pe, 8, exact=True)
    zf = rayleigh_Z(pf, 8, exact=False)
    for k in range(2, 9):
        assert zf[k] == pytest.approx(float(ze[k]), rel=1e-12)


def test_gen_coeffs_closed_forms():
    L, eta = Fr(2), Fr(-1)
    a = gen_coeffs_a(CoulombParams(L, eta), 2, exact=True)
    assert a[0] == 2 * eta / (L * (L + 1))
    assert a[1] == -(2 + 2 * eta * a[0]) / (L * (L + 1))
    assert a[2] == -(2 * eta * a[1] - a[0]) / (L * (L + 1))


def test_euler_rayleigh_bounds_frozen():
    # squared radius at (5, -1) is 36.7456...; every level must contain it
    vals = {
        1: (9.417551704863053, 89.41243398026283),
        2: (29.01803267050989, 47.94285601008623),
        3: (34.30467249639783, 40.99319305214931),
        4: (35.86682180290008, 38.621986367789226),
    }
    widths = []
    for s, (lo, hi) in vals.items():
        b = euler_rayleigh_bounds(CoulombParams(5.0, -1.0), s)
        assert b.lower == pytest.approx(lo, rel=1e-12)
        assert b.upper == pytest.approx(hi, rel=1e-12)
        assert b.lower < 36.7456 < b.upper
        widths.append(b.width)
    assert widths == sorted(widths, reverse=True)


def test_euler_rayleigh_limit_example():
    # (L=1/2, eta->0-, s=1): lower bound (Ztilde^(2))^(-1) = 12/7, so the
    # first positive zero of F' exceeds sqrt(12/7) ~ 1.309 (it is pi/2)
    t = rayleigh_Ztilde(CoulombParams(Fr(1, 2), Fr(0)), 2, exact=True)
    lower = 1 / t[2]
    assert lower == Fr(12, 7)
    assert math.sqrt(float(lower)) < math.pi / 2
    b = euler_rayleigh_bounds(CoulombParams(0.5, -1e-9), 1)
    assert b.lower == pytest.approx(12.0 / 7.0, rel=1e-6)
    assert b.lower < (math.pi / 2) ** 2 < b.upper


def test_rayleigh_gates():
    with pytest.raises(GateViolation):
        rayleigh_Z(CoulombParams(0.2 + 0.1j, 0.0), 2)
    with pytest.raises(GateViolation):
        gen_coeffs_a(CoulombParams(Fr(0), Fr(-1)), 2)     # L = 0 degenerate
    with pytest.raises(GateViolation):
        euler_rayleigh_bounds(CoulombParams(1.0, 0.0), 1)  # needs eta < 0
    with pytest.raises(ValueError):
        euler_rayleigh_bounds(CoulombParams(1.0, -1.0), 0)


def test_exact_flag_refuses_unrepresentable():
    with pytest.raises(ValueError):
        rayleigh_Z(CoulombParams(0.1234567890123, -1.0), 2, exact=True)


def test_zeta_base_row():
    rows = zeta_coeffs(2, 2)
    assert rows == [EtaPolynomial([Fr(1, 2)]), EtaPolynomial([Fr(-3, 4)]),
                    EtaPolynomial([Fr(9, 8), 0, Fr(1, 2)])]
    assert rows[2].to_str() == "9/8 + 1/2*eta^2"


def test_zeta_higher_rows():
    assert zeta_coeffs(4, 1) == [EtaPolynomial([Fr(1, 8)]),
                                 EtaPolynomial([Fr(-11, 16)])]
    assert zeta_coeffs(3, 0) == [EtaPolynomial([0, Fr(1, 2)])]


@given(st.integers(1, 6))
def test_zeta_even_leading_terms(k):
    # zeta_0^(2k) = C(2k, k) / (4^k (2k-1))
    lead = zeta_coeffs(2 * k, 0)[0]
    assert lead == EtaPolynomial([Fr(math.comb(2 * k, k),
                                     4 ** k * (2 * k - 1))])


def test_zeta_odd_rows_are_odd_in_eta():
    # odd-superscript sums vanish at eta = 0 (zeros come in +/- pairs)
    for k in (1, 2):
        for poly in zeta_coeffs(2 * k + 1, 4):
            assert all(poly.coeff(2 * i) == 0
                       for i in range(poly.degree // 2 + 1))


def test_laurent_eval_matches_recurrence():
    # at large L the Laurent sum reproduces the exact recurrence value
    p = CoulombParams(50.0, -0.3)
    direct = float(rayleigh_Z(p, 3)[3])
    series = zeta_laurent_eval(3, p, 6)
    assert series == pytest.approx(direct, rel=1e-9)
    p2 = CoulombParams(100.0, 0.0)
    assert zeta_laurent_eval(2, p2, 3) == pytest.approx(1.0 / 203.0,
                                                        abs=5e-9)


def test_laurent_gates_and_region_warning():
    with pytest.raises(GateViolation):
        zeta_laurent_eval(2, CoulombParams(-0.5, 0.0), 2)
    with pytest.warns(RegionWarning):
        zeta_laurent_eval(2, CoulombParams(2.0, 0.0), 2)  # L <= k+1


def test_table_repr_and_lookup():
    t = rayleigh_Z(CoulombParams(Fr(1), Fr(0)), 4, exact=True)
    assert t[2] == Fr(1, 5)
    with pytest.raises(KeyError):
        t[9]
