"""Radii of starlikeness and univalence of the normalized regular solutions.

Every radius computed here is the smallest positive root of a "reduced"
equation that is positive at 0+ and analytic there, so no special-function
zero finding is needed -- just a guarded scan for the first sign change:

* power-normalized form f(z) = z S(z)^(1/(L+1)):
      H_f(r)   = (L+1)(1-beta) S(r) + r S'(r)
* shifted form g(z) = z S(z):
      H_g(r)   = (1-beta) S(r) + r S'(r)
* generalized Bessel-type normalization phi(z) = z jhat(z)^(1/(nu+alpha))
  with jhat(z) = 0F1(nu+1; -z^2/4):
      H_phi(r) = (nu+alpha)(1-beta) jhat(r) + r jhat'(r)

The radius of starlikeness of order beta is the first positive root; the
case beta = 0 also gives the radius of univalence for these families.

For beta = 0 and eta < 0 the scan window is seeded from the Euler-Rayleigh
sandwich (s = 4), which brackets the square of the root a priori, making the
scan a handful of evaluations even at large order.  Above L = 20 evaluation
switches to mpmath at a precision sized to the prefactor cancellation.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import mpmath as mp

from .errors import (BoundsInvalid, GateViolation, NonMonotoneBracket,
                     NoRootInScanRange, RegionWarning)
from .rayleigh import euler_rayleigh_bounds
from .specfun import CoulombParams, _sum_pair_float, _sum_pair_mp, _working_dps

__all__ = [
    "Family",
    "RadiusQuery",
    "RadiusResult",
    "smallest_positive_root",
    "radius_f",
    "radius_g",
    "radius_phi",
]


class Family(str, enum.Enum):
    """Normalization families of the regular solution."""

    F_POWER = "f"        # z * S^(1/(L+1))
    F_SHIFT = "g"        # z * S
    BESSEL_GEN = "phi"   # z * jhat^(1/(nu+alpha))


@dataclass(frozen=True)
class RadiusResult:
    """First positive root with its final bracket and residual scale."""

    value: float
    bracket: Tuple[float, float]
    residual: float
    iterations: int


@dataclass(frozen=True)
class RadiusQuery:
    """CLI-friendly bundle of radius inputs; see :meth:`solve`."""

    family: Family
    beta: float = 0.0
    L: Optional[float] = None
    eta: Optional[float] = None
    nu: Optional[float] = None
    alpha: Optional[float] = None

    def solve(self) -> RadiusResult:
        fam = Family(self.family)
        if fam is Family.BESSEL_GEN:
            if self.nu is None or self.alpha is None:
                raise GateViolation("family 'phi' needs nu and alpha")
            return radius_phi(self.nu, self.alpha, self.beta)
        if self.L is None or self.eta is None:
            raise GateViolation(f"family {fam.value!r} needs L and eta")
        op = radius_f if fam is Family.F_POWER else radius_g
        return op(self.L, self.eta, self.beta)


# ---------------------------------------------------------------------------
# generic first-root scan
# ---------------------------------------------------------------------------

def _refine(fn: Callable[[float], float], lo, f_lo, hi, f_hi,
            width_tol: float):
    """Bisect a sign-change bracket down to width_tol, then take one secant
    step if it stays inside.  Returns (root, lo, hi, evals)."""
    if not (f_lo > 0 >= f_hi):
        raise NonMonotoneBracket(
            f"refinement called without a sign change: f({lo}) = {f_lo}, "
            f"f({hi}) = {f_hi}")
    evals = 0
    while hi - lo > width_tol:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:      # width at rounding floor
            break
        f_mid = fn(mid)
        evals += 1
        if f_mid > 0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    root = (lo + hi) / 2
    denom = f_hi - f_lo
    if denom != 0:
        sec = lo - f_lo * (hi - lo) / denom
        if lo < sec < hi:
            root = sec
    return root, lo, hi, evals


def smallest_positive_root(fn: Callable[[float], float],
                           scan_ceiling: float,
                           *,
                           step: float = 0.05,
                           scan_start: Optional[float] = None,
                           grow_after: float = 10.0,
                           growth: float = 1.25,
                           step_cap: float = 0.6,
                           width_rel: float = 1e-14) -> RadiusResult:
    """First positive root of ``fn``, assumed positive just right of 0.

    Scans with the given step (growing geometrically past ``grow_after``),
    brackets the first sign change and bisects it to width
    ``width_rel * (1 + r)``.  A local dip that undershoots the recent scale
    without crossing zero is probed by bounded minimization so tangential
    (double) roots are found rather than skipped.  ``fn`` may return mpmath
    floats; comparisons and the returned floats handle both.

    Raises NoRootInScanRange when the scan passes ``scan_ceiling``.
    """
    if scan_ceiling <= 0:
        raise ValueError("scan_ceiling must be positive")
    h = step
    x0 = scan_start if scan_start is not None else h
    f0 = fn(x0)
    evals = 1
    # the contract is fn(0+) > 0; if the start already sits past the first
    # root, walk left until positive so the bracket is still the first root
    shrink = 0
    while f0 <= 0:
        x_hi, f_hi = x0, f0
        x0 = x0 / 2
        f0 = fn(x0)
        evals += 1
        shrink += 1
        if shrink > 60:
            raise ValueError("fn is not positive at 0+ as required")
    if shrink:
        width_tol = width_rel * (1.0 + float(x_hi))
        root, lo, hi, ev = _refine(fn, x0, f0, x_hi, f_hi, width_tol)
        res = abs(float(fn(float(root))))
        return RadiusResult(value=float(root), bracket=(float(lo), float(hi)),
                            residual=res, iterations=evals + ev + 1)
    xp, fp = x0, f0                 # previous point
    xpp, fpp = None, None           # point before that (for dip detection)
    fmax = abs(float(f0))
    while True:
        x = xp + h
        if x > scan_ceiling + h:
            raise NoRootInScanRange(
                f"no sign change of the reduced equation found on "
                f"(0, {scan_ceiling}]")
        f = fn(x)
        evals += 1
        if f <= 0:
            width_tol = width_rel * (1.0 + float(x))
            root, lo, hi, ev = _refine(fn, xp, fp, x, f, width_tol)
            res = abs(float(fn(float(root))))
            return RadiusResult(value=float(root),
                                bracket=(float(lo), float(hi)),
                                residual=res, iterations=evals + ev + 1)
        af = abs(float(f))
        if af > fmax:
            fmax = af
        # tangential-root probe: a sharp local minimum far below recent scale
        if (xpp is not None and fp < fpp and fp < f
                and float(fp) <= 0.25 * min(float(fpp), float(f))
                and float(fp) <= 0.05 * fmax):
            xa, xb = float(xpp), float(x)
            gr = (math.sqrt(5.0) - 1.0) / 2.0
            c1 = xb - gr * (xb - xa)
            c2 = xa + gr * (xb - xa)
            fc1, fc2 = fn(c1), fn(c2)
            evals += 2
            while xb - xa > 1e-10 * (1.0 + xb):
                if fc1 <= 0 or fc2 <= 0:
                    break
                if fc1 < fc2:
                    xb, c2, fc2 = c2, c1, fc1
                    c1 = xb - gr * (xb - xa)
                    fc1 = fn(c1)
                else:
                    xa, c1, fc1 = c1, c2, fc2
                    c2 = xa + gr * (xb - xa)
                    fc2 = fn(c2)
                evals += 1
            xm, fm = (c1, fc1) if fc1 < fc2 else (c2, fc2)
            if fm <= 0:
                width_tol = width_rel * (1.0 + float(xm))
                root, lo, hi, ev = _refine(fn, float(xpp), fpp, float(xm), fm,
                                           width_tol)
                res = abs(float(fn(float(root))))
                return RadiusResult(value=float(root),
                                    bracket=(float(lo), float(hi)),
                                    residual=res,
                                    iterations=evals + ev + 1)
            if float(fm) <= 1e-10 * fmax:
                # numerically tangential: report the dip bottom
                return RadiusResult(value=float(xm),
                                    bracket=(float(xa), float(xb)),
                                    residual=abs(float(fm)),
                                    iterations=evals)
            # genuine but harmless dip; fall through and keep scanning
        xpp, fpp = xp, fp
        xp, fp = x, f
        if x > grow_after:
            h = min(h * growth, step_cap)


# ---------------------------------------------------------------------------
# reduced-equation evaluators
# ---------------------------------------------------------------------------

def _coulomb_poly(params: CoulombParams, lam: float, ceiling: float):
    """Coefficients h_n = (lam + n) a_n so that H(r) = sum h_n r^n equals
    lam*S + r S' with lam = (L+1)(1-beta) (or (1-beta) for the shifted
    form).  Float path only; term count sized for |r| <= ceiling."""
    L = params.real_L()
    eta = float(params.eta)
    # walk the term recurrence at r = ceiling to find a safe cutoff
    t_nm2, t_nm1 = 0.0, 1.0
    tiny_run, n = 0, 0
    scale = 1.0
    for n in range(1, 100000):
        if n == 1:
            t = eta * ceiling / (L + 1.0)
        else:
            t = (2.0 * eta * ceiling * t_nm1 - ceiling * ceiling * t_nm2) \
                / (n * (n + 2.0 * L + 1.0))
        t_nm2, t_nm1 = t_nm1, t
        scale = max(scale, abs(t))
        if abs(t) <= 1e-19 * scale and n * (n + 2.0 * L + 1.0) \
                > 4.0 * abs(eta) * ceiling + 2.0 * ceiling * ceiling:
            tiny_run += 1
            if tiny_run >= 5:
                break
        else:
            tiny_run = 0
    n_terms = n + 1
    a = [1.0, eta / (L + 1.0)] if n_terms > 1 else [1.0]
    for m in range(2, n_terms):
        a.append((2.0 * eta * a[m - 1] - a[m - 2]) / (m * (m + 2.0 * L + 1.0)))
    return [(lam + m) * am for m, am in enumerate(a)]


def _horner(coeffs, r: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * r + c
    return acc


def _reduced_fn(params: CoulombParams, lam: float, ceiling: float):
    """Callable H(r) = lam*S(r) + r S'(r), float or mpmath automatically."""
    L = params.real_L()
    if L <= 20.0:
        coeffs = _coulomb_poly(params, lam, ceiling)
        return lambda r: _horner(coeffs, r), None
    dps = _working_dps(params, ceiling)
    tol = mp.mpf(10) ** (8 - dps)

    def fn(r):
        S, T, _, _, _ = _sum_pair_mp(params, mp.mpf(r), dps, tol)
        return lam * S + T

    return fn, dps


def _scan_window(params: CoulombParams, beta: float):
    """(start, step, ceiling, grow) for the scan; Euler-Rayleigh seeded when
    the sandwich applies (beta = 0, eta < 0, L != 0)."""
    L = params.real_L()
    eta = float(params.eta)
    if beta == 0.0 and eta < 0.0 and L != 0.0:
        try:
            b4 = euler_rayleigh_bounds(params, 4)
            # the sandwich is strict, so the root lies inside (lo, hi); a
            # hair of margin guards the sqrt roundings only
            lo = math.sqrt(b4.lower) * (1.0 - 1e-9)
            hi = math.sqrt(b4.upper) * (1.0 + 1e-9)
            # never stride past a consecutive pair of F' zeros: their gap
            # near the first zero scales like 1.77 L^(1/3), so cap the step
            # well below that even when the sandwich is loose
            gap_cap = max(0.5, 0.6 * max(L, 1.0) ** (1.0 / 3.0))
            step = max(min((hi - lo) / 4.0, gap_cap), 0.01)
            return lo, step, hi + 1.0, False
        except (BoundsInvalid, ValueError, GateViolation):
            pass
    return None, 0.05, 100.0, True


def _finish(params: CoulombParams, lam: float, raw: RadiusResult,
            step: float, beta: float) -> RadiusResult:
    """Recompute the residual in the un-reduced normalization
    |r g' + (L - beta(L+1)) g| (which equals r*|H(r)|) and flag roots that
    sit within a few scan steps of the origin when beta is close to 1."""
    r = raw.value
    if params.real_L() <= 20.0:
        S, T, _, _, _ = _sum_pair_float(params, r, 1e-15)
    else:
        dps = _working_dps(params, r)
        S, T, _, _, _ = _sum_pair_mp(params, r, dps, mp.mpf(10) ** (8 - dps))
    residual = float(abs(r * (lam * S + T)))
    if beta > 0.9 and r < 10.0 * step:
        warnings.warn(
            f"order beta = {beta} pushes the radius ({r:.3g}) below ten scan "
            "steps; treat the bracket with care", RegionWarning, stacklevel=3)
    return RadiusResult(value=r, bracket=raw.bracket, residual=residual,
                        iterations=raw.iterations)


def _radius_coulomb(L, eta, beta: float, shifted: bool) -> RadiusResult:
    if isinstance(L, complex) or isinstance(eta, complex):
        raise GateViolation("radii are defined for real L and eta")
    if not -1.0 < float(L):
        raise GateViolation(f"need L > -1, got {L}")
    if not 0.0 <= beta < 1.0:
        raise GateViolation(f"order beta must lie in [0, 1), got {beta}")
    params = CoulombParams(float(L), float(eta))
    lam = (1.0 - beta) if shifted else (float(L) + 1.0) * (1.0 - beta)
    start, step, ceiling, grow = _scan_window(params, beta)
    fn, _ = _reduced_fn(params, lam, ceiling)
    raw = smallest_positive_root(
        fn, ceiling, step=step, scan_start=start,
        grow_after=(10.0 if grow else math.inf))
    return _finish(params, lam, raw, step, beta)


def radius_f(L, eta, beta: float = 0.0) -> RadiusResult:
    """Radius of starlikeness of order beta of f(z) = z S(z)^(1/(L+1)).

    First positive root of (L+1)(1-beta) S + r S'; for beta = 0 this is the
    first positive zero of F' and also the radius of univalence.
    Preconditions: real L > -1, real eta, 0 <= beta < 1.
    """
    return _radius_coulomb(L, eta, beta, shifted=False)


def radius_g(L, eta, beta: float = 0.0) -> RadiusResult:
    """Radius of starlikeness of order beta of the shifted form g = z S(z).

    First positive root of (1-beta) S + r S'.
    """
    return _radius_coulomb(L, eta, beta, shifted=True)


def radius_phi(nu, alpha, beta: float = 0.0) -> RadiusResult:
    """Radius of starlikeness of order beta of
    phi(z) = z jhat(z)^(1/(nu+alpha)), jhat(z) = 0F1(nu+1; -z^2/4).

    First positive root of (nu+alpha)(1-beta) jhat + r jhat'.
    Preconditions: nu > -1, nu + alpha > 0, 0 <= beta < 1.
    """
    nu = float(nu)
    alpha = float(alpha)
    if nu <= -1.0:
        raise GateViolation(f"need nu > -1, got {nu}")
    if nu + alpha <= 0.0:
        raise GateViolation(f"need nu + alpha > 0, got nu+alpha = {nu + alpha}")
    if not 0.0 <= beta < 1.0:
        raise GateViolation(f"order beta must lie in [0, 1), got {beta}")
    lam = (nu + alpha) * (1.0 - beta)
    ceiling = 3.0 * (nu + 6.0)   # well past the first jhat' sign feature
    # jhat(r) = sum_m c_m w^m with w = r^2; H uses (lam + 2m) c_m.  Track
    # the term size at the ceiling incrementally so nothing overflows.
    c = [1.0]
    term, term_peak = 1.0, 1.0
    m = 0
    while m < 4000:
        m += 1
        ratio = -0.25 / (m * (nu + m))
        c.append(c[-1] * ratio)
        term = abs(term * ratio) * ceiling * ceiling
        term_peak = max(term_peak, term)
        if m * (nu + m) > 0.5 * ceiling * ceiling and term < 1e-19 * term_peak:
            break
    h = [(lam + 2.0 * m) * cm for m, cm in enumerate(c)]

    def fn(r: float) -> float:
        return _horner(h, r * r)

    raw = smallest_positive_root(fn, ceiling, step=0.05,
                                 grow_after=10.0)
    # residual in the unreduced scale: |r jhat' + ... | = r * |H|
    residual = abs(raw.value * fn(raw.value))
    if beta > 0.9 and raw.value < 0.5:
        warnings.warn(
            f"order beta = {beta} pushes the radius ({raw.value:.3g}) near "
            "the origin; treat the bracket with care", RegionWarning,
            stacklevel=2)
    return RadiusResult(value=raw.value, bracket=raw.bracket,
                        residual=residual, iterations=raw.iterations)
