"""Large-order expansion of the radius of starlikeness."""

import math
from fractions import Fraction as Fr

import pytest

from coulombstar.asympt import (annihilation_residuals, empirical_order,
                                epsilon_coeffs, epsilon_coeffs_recurrence,
                                radius_asymptotic)
from coulombstar.errors import GateViolation
from coulombstar.exact import EtaPolynomial, Sqrt2Rational, format_sqrt2
from coulombstar.radii import radius_f

SQRT2 = math.sqrt(2.0)


def test_leading_constant_is_sqrt2():
    table = epsilon_coeffs(0)
    assert table.c == Sqrt2Rational.sqrt2()
    assert format_sqrt2(table.c) == "sqrt2"
    assert table.order == 0 and table.eps == []


def test_first_correction_exact():
    # solved from the identity: eps_1 = eta + 5 sqrt2/4 - 1/4
    e1 = epsilon_coeffs(1).eps[0]
    assert e1 == EtaPolynomial(
        [Sqrt2Rational(Fr(-1, 4), Fr(5, 4)), Sqrt2Rational(1, 0)],
        Sqrt2Rational)
    assert e1.to_str(descending=True) == "eta + 5*sqrt2/4 - 1/4"


def test_second_correction_string():
    e2 = epsilon_coeffs(2).eps[1]
    assert e2.to_str(descending=True) == \
        "-sqrt2/4*eta^2 + (-7*sqrt2/8 + 1/2)*eta - 5*sqrt2/64 + 3/8"


def test_recurrence_matches_series_solve():
    a = epsilon_coeffs(4)
    b = epsilon_coeffs_recurrence(4)
    assert a.c == b.c
    assert a.eps == b.eps


def test_annihilation_residuals_vanish():
    res = annihilation_residuals(4)
    assert len(res) == 5
    assert all(not poly for poly in res)     # exact zero polynomials


def test_radius_asymptotic_closed_form_N1():
    # L (c + eps_1/L) = sqrt2 L + eta + 5 sqrt2/4 - 1/4
    L, eta = 37.0, -1.25
    expect = SQRT2 * L + eta + 5 * SQRT2 / 4 - 0.25
    assert radius_asymptotic(L, eta, 1) == pytest.approx(expect, rel=1e-15)
    assert radius_asymptotic(L, eta, 0) == pytest.approx(SQRT2 * L,
                                                         rel=1e-15)


def test_gates():
    with pytest.raises(GateViolation):
        radius_asymptotic(-2.0, 0.0, 1)
    with pytest.raises(GateViolation):
        radius_asymptotic(0.0, 0.0, 1)
    with pytest.raises(ValueError):
        epsilon_coeffs(-1)
    with pytest.raises(ValueError):
        empirical_order([100.0], -1.0, 1)            # needs >= 2 points
    with pytest.raises(GateViolation):
        empirical_order([10.0, -5.0], -1.0, 1)


def test_eps_floats_match_polynomials():
    table = epsilon_coeffs(3)
    vals = table.as_floats(-1.0)
    assert vals[0] == pytest.approx(SQRT2)
    assert vals[1] == pytest.approx(-1.0 + 5 * SQRT2 / 4 - 0.25)


def test_truncated_expansion_diverges_from_direct_radius():
    # Documented finding: the directly computed radius grows like 1.0 * L
    # while the expansion's leading term is sqrt2 * L, so the scaled error
    # |direct - truncated|/L plateaus near sqrt2 - 1 instead of decaying.
    fit = empirical_order([25.0, 50.0, 100.0, 200.0], -1.0, 1)
    assert len(fit.errors) == 4
    assert all(e > 0.1 for e in fit.errors)
    assert fit.slope > -0.5                       # nowhere near -(N+1) = -2
    assert float(fit) == fit.slope
    # and the direct radius itself tracks L closely
    for L in (50.0, 100.0):
        assert radius_f(L, -1.0).value / L == pytest.approx(1.0, abs=0.06)
