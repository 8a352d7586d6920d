"""Independent verification utilities.

Nothing here reuses the radius scan or the Rayleigh recurrences being
verified; these are the cross-checks:

* ``starlike_scan`` / ``spirallike_scan`` -- evaluate the starlikeness
  witness Re(z h'(z)/h(z)) (or its rotated, spirallike variant for complex
  order) on a circle |z| = r and report the minimum.  A radius is confirmed
  by a positive minimum just below it and a sign change just above it.
* ``boundary_image`` -- points of the image curve h(r e^(it)) for plotting.
* ``zero_sum_oracle`` -- power sums over zeros located by direct numerical
  integration of the defining ODE  u'' = (2 eta/z + L(L+1)/z^2 - 1) u,
  with an Euler-Maclaurin tail; this never touches the series recurrences,
  so agreement with ``rayleigh_Z``/``rayleigh_Ztilde`` is meaningful.
* ``dini_rayleigh_oracle`` -- the classical closed form for the squared
  reciprocal sum over Dini zeros, for the Bessel reduction cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npp
from scipy.integrate import solve_ivp

from .errors import (GateViolation, PoleOnCircle, ZeroEnumerationIncomplete)
from .radii import Family
from .specfun import (CoulombParams, coulomb_series_coeffs,
                      eval_F_with_derivative, _sum_pair_float)

__all__ = [
    "DiskScanReport",
    "starlike_scan",
    "spirallike_scan",
    "companion_order",
    "boundary_image",
    "zero_sum_oracle",
    "dini_rayleigh_oracle",
]


@dataclass(frozen=True)
class DiskScanReport:
    """Minimum of the (possibly rotated) starlikeness witness on a circle."""

    radius_scanned: float
    grid_size: int
    min_real_part: float
    argmin_angle: float
    witness_rotation: float = 0.0


def _coeff_count(params: CoulombParams, r: float) -> int:
    """Terms needed so the series tail at |z| = r is below float noise."""
    _, _, terms, _, _ = _sum_pair_float(params, r, 1e-15)
    return terms + 8


def _coulomb_arrays(params: CoulombParams, r: float):
    n = _coeff_count(params, r)
    a = np.asarray(coulomb_series_coeffs(params, n, exact=False),
                   dtype=complex if params.is_complex else float)
    ap = a[1:] * np.arange(1, n + 1)
    return a, ap


def _jhat_arrays(nu: float, r: float):
    c = [1.0]
    m = 0
    while True:
        m += 1
        c.append(c[-1] * (-0.25) / (m * (nu + m)))
        if m * (nu + m) > r * r and abs(c[-1]) * (r + 1.0) ** (2 * m) < 1e-18:
            break
        if m > 2000:
            break
    c = np.asarray(c)
    c1 = c[1:] * np.arange(1, len(c))       # jhat' = 2 z sum m c_m (z^2)^(m-1)
    return c, c1


def _first_zero_guard(real_vals: np.ndarray, what: str) -> None:
    if np.any(real_vals <= 0.0):
        raise GateViolation(
            f"the scan radius lies beyond the first positive zero of {what}; "
            "the witness ratio is undefined there")


def _ratio_min(vals: np.ndarray, grid_size: int) -> Tuple[float, float]:
    k = int(np.argmin(vals))
    return float(vals[k]), 2.0 * math.pi * k / grid_size


def starlike_scan(family: Union[Family, str], r: float, *,
                  params: Optional[CoulombParams] = None,
                  nu: Optional[float] = None,
                  alpha: Optional[float] = None,
                  grid_size: int = 1024) -> DiskScanReport:
    """Minimum of Re(z h'/h) over |z| = r for the requested normalization.

    h is f, g, or phi per ``family``; the scan is the verification witness
    for radii of starlikeness (of order beta: compare the minimum against
    beta).  Preconditions: r > 0, grid_size >= 16, r at most the first
    positive zero of the normalized function (checked on the real axis for
    real parameters).  Raises PoleOnCircle when the denominator vanishes on
    the grid to working precision.
    """
    fam = Family(family)
    if r <= 0:
        raise ValueError("r must be positive")
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    t = 2.0 * math.pi * np.arange(grid_size) / grid_size
    z = r * np.exp(1j * t)
    if fam in (Family.F_POWER, Family.F_SHIFT):
        if params is None:
            raise GateViolation(f"family {fam.value!r} needs params")
        a, ap = _coulomb_arrays(params, r)
        if not params.is_complex:
            xs = np.linspace(r / 64.0, r, 64)
            _first_zero_guard(npp.polyval(xs, a), "the normalized function")
        S = npp.polyval(z, a)
        Sp = npp.polyval(z, ap)
        if np.min(np.abs(S)) < 1e-12 * max(1.0, float(np.max(np.abs(S)))):
            raise PoleOnCircle(
                f"|S| vanishes on |z| = {r} to working precision")
        zr = z * Sp / S
        if fam is Family.F_POWER:
            w = 1.0 + zr / (params.L + 1.0)
        else:
            w = 1.0 + zr
    else:
        if nu is None or alpha is None:
            raise GateViolation("family 'phi' needs nu and alpha")
        if nu + alpha <= 0 or nu <= -1:
            raise GateViolation("need nu > -1 and nu + alpha > 0")
        c, c1 = _jhat_arrays(float(nu), r)
        xs = np.linspace(r / 64.0, r, 64)
        _first_zero_guard(npp.polyval(xs * xs, c), "the normalized function")
        w2 = z * z
        J = npp.polyval(w2, c)
        Jp = 2.0 * z * npp.polyval(w2, c1)
        if np.min(np.abs(J)) < 1e-12 * max(1.0, float(np.max(np.abs(J)))):
            raise PoleOnCircle(
                f"|jhat| vanishes on |z| = {r} to working precision")
        w = 1.0 + (z * Jp / J) / (float(nu) + float(alpha))
    mn, ang = _ratio_min(np.real(w), grid_size)
    return DiskScanReport(radius_scanned=float(r), grid_size=grid_size,
                          min_real_part=mn, argmin_angle=ang)


def companion_order(L: complex) -> float:
    """The real order l > -1/2 with l(l+1) = Re[L(L+1)], used to transfer
    radius statements to complex order.

    Exists iff Re[L(L+1)] > -1/4, i.e. (Im L)^2 < Re(L)(Re(L)+1) + 1/4.
    """
    q = (L * (L + 1.0)).real
    if q <= -0.25:
        raise GateViolation(
            f"Re[L(L+1)] = {q} <= -1/4: no real companion order exists")
    return (-1.0 + math.sqrt(1.0 + 4.0 * q)) / 2.0


def spirallike_scan(L: complex, eta: float, r: float, *,
                    theta: Optional[float] = None,
                    grid_size: int = 1024) -> DiskScanReport:
    """Minimum of the rotated witness Re(e^(i theta) z f'/f) on |z| = r for
    complex order L.

    theta defaults to arg(L+1), the rotation under which f is spirallike up
    to the companion-order radius.  Gates: Re L > -1 and |arg(L+1)| < pi/4.
    """
    Lc = complex(L)
    if Lc.real <= -1.0:
        raise GateViolation(f"need Re L > -1, got {Lc}")
    if abs(cmath.phase(Lc + 1.0)) >= math.pi / 4.0:
        raise GateViolation(
            f"|arg(L+1)| = {abs(cmath.phase(Lc + 1.0)):.3f} >= pi/4")
    if r <= 0:
        raise ValueError("r must be positive")
    if grid_size < 16:
        raise ValueError("grid_size must be at least 16")
    th = cmath.phase(Lc + 1.0) if theta is None else float(theta)
    params = CoulombParams(Lc, eta)
    a, ap = _coulomb_arrays(params, r)
    t = 2.0 * math.pi * np.arange(grid_size) / grid_size
    z = r * np.exp(1j * t)
    S = npp.polyval(z, a)
    Sp = npp.polyval(z, ap)
    if np.min(np.abs(S)) < 1e-12 * max(1.0, float(np.max(np.abs(S)))):
        raise PoleOnCircle(f"|S| vanishes on |z| = {r} to working precision")
    zf = 1.0 + (z * Sp / S) / (Lc + 1.0)
    vals = np.real(np.exp(1j * th) * zf)
    mn, ang = _ratio_min(vals, grid_size)
    return DiskScanReport(radius_scanned=float(r), grid_size=grid_size,
                          min_real_part=mn, argmin_angle=ang,
                          witness_rotation=th)


def boundary_image(family: Union[Family, str], r: float, n_points: int, *,
                   params: Optional[CoulombParams] = None,
                   nu: Optional[float] = None,
                   alpha: Optional[float] = None) -> List[complex]:
    """Image points h(r e^(it)) for t = 2 pi k/n_points, k = 0..n_points-1.

    Fractional powers take the principal branch.  The curve is closed by
    construction (the last point neighbors the first).
    """
    fam = Family(family)
    if r <= 0:
        raise ValueError("r must be positive")
    if n_points < 8:
        raise ValueError("n_points must be at least 8")
    t = 2.0 * math.pi * np.arange(n_points) / n_points
    z = r * np.exp(1j * t)
    if fam in (Family.F_POWER, Family.F_SHIFT):
        if params is None:
            raise GateViolation(f"family {fam.value!r} needs params")
        a, _ = _coulomb_arrays(params, r)
        S = npp.polyval(z, a)
        if fam is Family.F_SHIFT:
            vals = z * S
        else:
            vals = z * np.exp(np.log(S) / (params.L + 1.0))
    else:
        if nu is None or alpha is None:
            raise GateViolation("family 'phi' needs nu and alpha")
        c, _ = _jhat_arrays(float(nu), r)
        J = npp.polyval(z * z, c)
        vals = z * np.exp(np.log(J) / (float(nu) + float(alpha)))
    return [complex(v) for v in vals]


# ---------------------------------------------------------------------------
# ODE zero enumeration and power sums
# ---------------------------------------------------------------------------

def _spacing_guard(zeros: np.ndarray) -> None:
    d = np.diff(zeros)
    if np.any(d <= 0):
        raise ZeroEnumerationIncomplete("zero list is not increasing")
    for i in range(3, len(d)):
        window = d[max(0, i - 5):i]
        med = float(np.median(window))
        if d[i] > 1.75 * med:
            raise ZeroEnumerationIncomplete(
                f"spacing jump at zero #{i + 1}: {d[i]:.3f} vs recent median "
                f"{med:.3f}; a zero was probably skipped")


def _ode_zeros(params: CoulombParams, which: str, n_zeros: int) -> np.ndarray:
    """First n_zeros positive zeros of F (which='F') or F' (which='Fprime')
    by integrating the defining ODE outward from z0 = 0.5."""
    L = params.real_L()
    eta = float(params.eta)
    z0 = 0.5
    fe = eval_F_with_derivative(params, z0)
    y0 = [float(fe.value), float(fe.derivative)]
    if y0[0 if which == "F" else 1] <= 0.0:
        raise GateViolation(
            f"{which} is not positive at z0 = {z0}; a zero below the "
            "integration start would be missed")

    def rhs(z, y):
        return [y[1], (2.0 * eta / z + L * (L + 1.0) / (z * z) - 1.0) * y[0]]

    idx = 0 if which == "F" else 1

    def event(z, y):
        return y[idx]

    event.direction = 0.0
    turning = eta + math.sqrt(eta * eta + max(L * (L + 1.0), 0.0))
    z_end = max(turning, z0) + math.pi * (n_zeros + 2) + 10.0
    for _ in range(3):
        sol = solve_ivp(rhs, (z0, z_end), y0, method="DOP853",
                        events=event, rtol=1e-10, atol=1e-12, max_step=1.0)
        if not sol.success:
            raise ZeroEnumerationIncomplete(
                f"ODE integration failed: {sol.message}")
        zs = sol.t_events[0]
        zs = zs[np.concatenate(([True], np.diff(zs) > 1e-8))]
        if len(zs) >= n_zeros:
            zeros = zs[:n_zeros]
            _spacing_guard(zeros)
            return zeros
        z_end *= 1.5
    raise ZeroEnumerationIncomplete(
        f"found only {len(zs)} of {n_zeros} requested zeros below z = "
        f"{z_end / 1.5:.1f}")


def zero_sum_oracle(params: CoulombParams, k: int = 2, which: str = "F",
                    n_zeros: int = 200, tail: bool = True) -> float:
    """Power sum sum_rho rho^(-k) over *all* nontrivial zeros of F or F',
    located by ODE integration (independent of every series recurrence).

    For eta != 0 the negative-axis zeros are the mirrored positive-axis
    zeros at -eta, so both sign conventions are enumerated; for even k the
    two half-sums add.  The infinite tail beyond the last enumerated zero
    is approximated by an Euler-Maclaurin estimate from the local spacing.

    Preconditions: real L > -1, eta <= 0, k even in {2, 4},
    8 <= n_zeros <= 500, which in {'F', 'Fprime'}.
    """
    if params.is_complex:
        raise GateViolation("the zero-sum oracle needs real L")
    if which not in ("F", "Fprime"):
        raise ValueError(f"which must be 'F' or 'Fprime', got {which!r}")
    if k not in (2, 4):
        raise ValueError("k must be 2 or 4 (even sums only)")
    if not 8 <= n_zeros <= 500:
        raise ValueError("n_zeros must lie in [8, 500]")
    if float(params.eta) > 0:
        raise GateViolation("stated for eta <= 0 (flip eta yourself otherwise)")
    total = 0.0
    sides = [params]
    if float(params.eta) != 0.0:
        sides.append(CoulombParams(params.L, -float(params.eta)))
    for side in sides:
        zeros = _ode_zeros(side, which, n_zeros)
        s = float(np.sum(zeros ** (-float(k))))
        if tail:
            d = np.diff(zeros)
            B = float(np.mean(d[-10:]))
            A = float(zeros[-1])
            s += (A + B / 2.0) ** (1 - k) / (B * (k - 1))
        total += s
    if float(params.eta) == 0.0:
        total *= 2.0      # negative-axis zeros mirror the positive ones
    return total


def dini_rayleigh_oracle(nu, H) -> Fraction:
    """Exact first Rayleigh sum over the positive zeros of the Dini function
    r J'_nu(r) + H J_nu(r):  sum lambda_n^(-2) = (nu + 2 + H) /
    (4 (nu + 1) (nu + H)).

    Preconditions: rational nu > -1 and nu + H > 0.
    """
    nu_f = Fraction(nu)
    H_f = Fraction(H)
    if nu_f <= -1:
        raise GateViolation(f"need nu > -1, got {nu}")
    if nu_f + H_f <= 0:
        raise GateViolation(f"need nu + H > 0, got {nu_f + H_f}")
    return (nu_f + 2 + H_f) / (4 * (nu_f + 1) * (nu_f + H_f))
