"""Rayleigh-type zero sums and their large-order Laurent coefficients.

Two families of power sums over zeros are computed by exact recurrences:

* ``rayleigh_Z``  -- Z^(k) = sum rho_n^(-k) over the nontrivial zeros of the
  regular Coulomb function, via

      Z^(2)   = (1/(2L+3)) (1 + eta^2/(L+1)^2),
      Z^(k+1) = (1/(2L+k+2)) ( (2 eta/(L+1)) Z^(k)
                               + sum_{l=1}^{k-2} Z^(l+1) Z^(k-l) ).

* ``rayleigh_Ztilde`` -- the same sums over the zeros of the *derivative*,
  built from an auxiliary coefficient sequence (``gen_coeffs_a``) of the
  logarithmic derivative at the origin.

Both run over exact rationals whenever L and eta are rational (ints,
Fractions, or floats with denominator <= 2^20) and over floats otherwise.

``zeta_coeffs`` holds the coefficients zeta_n^(k) of the large-order Laurent
expansions of Z^(k),

    Z^(2k)   = L^-(2k-1) * sum_n zeta_n^(2k)   L^-n,
    Z^(2k+1) = L^-(2k+1) * sum_n zeta_n^(2k+1) L^-n,

as exact polynomials in eta; ``zeta_laurent_eval`` sums them numerically
(inclusive of the n = n_terms term).  ``euler_rayleigh_bounds`` turns the
derivative-zero sums into two-sided bounds for the square of the smallest
positive zero of F':

    (Ztilde^(2s))^(-1/s)  <  rho~_1^2  <  Ztilde^(2s)/Ztilde^(2s+2).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Union

from .errors import BoundsInvalid, GateViolation, RegionWarning
from .exact import EtaPolynomial, p_coeff
from .specfun import CoulombParams, _is_exactable

__all__ = [
    "RayleighTable",
    "EulerRayleighBounds",
    "rayleigh_Z",
    "gen_coeffs_a",
    "rayleigh_Ztilde",
    "euler_rayleigh_bounds",
    "zeta_coeffs",
    "zeta_laurent_eval",
]

Number = Union[Fraction, float]


@dataclass(frozen=True)
class RayleighTable:
    """Zero power sums values[k] for k = 2 .. k_max."""

    params: CoulombParams
    kind: str                      # "Z" (function zeros) or "Ztilde" (F' zeros)
    values: Dict[int, Number]
    exact: bool

    def __getitem__(self, k: int) -> Number:
        return self.values[k]


@dataclass(frozen=True)
class EulerRayleighBounds:
    """Two-sided bounds for the squared smallest positive zero of F'."""

    s: int
    lower: float
    upper: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _pick_mode(params: CoulombParams, exact):
    if params.is_complex:
        raise GateViolation("zero power sums need real L")
    want = (_is_exactable(params.L) and _is_exactable(params.eta)
            if exact is None else bool(exact))
    if want and not (_is_exactable(params.L) and _is_exactable(params.eta)):
        raise ValueError(
            f"exact mode needs rational L and eta, got L={params.L!r}, "
            f"eta={params.eta!r}")
    if want:
        return Fraction(params.L), Fraction(params.eta), True
    return float(params.L), float(params.eta), False


def rayleigh_Z(params: CoulombParams, k_max: int,
               exact: Union[bool, None] = None) -> RayleighTable:
    """Zero sums Z^(2) .. Z^(k_max) of the regular solution.

    Preconditions: real L > -1, k_max in [2, 64] (exact mode caps at 40 to
    keep rationals manageable).
    """
    L, eta, is_exact = _pick_mode(params, exact)
    cap = 40 if is_exact else 64
    if not 2 <= k_max <= cap:
        raise ValueError(f"k_max must be in [2, {cap}], got {k_max}")
    Z: Dict[int, Number] = {}
    one = Fraction(1) if is_exact else 1.0
    Z[2] = (one + eta * eta / ((L + 1) * (L + 1))) / (2 * L + 3)
    for k in range(2, k_max):
        acc = (2 * eta / (L + 1)) * Z[k]
        for l in range(1, k - 1):
            acc += Z[l + 1] * Z[k - l]
        Z[k + 1] = acc / (2 * L + k + 2)
    return RayleighTable(params=params, kind="Z", values=Z, exact=is_exact)


def gen_coeffs_a(params: CoulombParams, n_max: int,
                 exact: Union[bool, None] = None) -> List[Number]:
    """Taylor coefficients of the origin expansion driving the F'-zero sums.

    a_0 = 2 eta / (L (L+1)),
    a_1 = -(2 + 2 eta a_0) / (L (L+1)),
    a_n = -(2 eta a_{n-1} - a_{n-2}) / (L (L+1))      (n >= 2).

    Requires L > -1 and L != 0 (the normalization divides by L).
    """
    L, eta, _ = _pick_mode(params, exact)
    if L == 0:
        raise GateViolation("the auxiliary sequence is undefined at L = 0")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    d = L * (L + 1)
    a: List[Number] = [2 * eta / d]
    if n_max >= 1:
        a.append(-(2 + 2 * eta * a[0]) / d)
    for _ in range(2, n_max + 1):
        a.append(-(2 * eta * a[-1] - a[-2]) / d)
    return a


def rayleigh_Ztilde(params: CoulombParams, k_max: int,
                    exact: Union[bool, None] = None) -> RayleighTable:
    """Power sums over the zeros of F' (the derivative of the regular
    solution), k = 2 .. k_max.

    (2L+3) Zt^(2) = 1 - L a_1 - p a_0 + p^2            with p = (L+2) eta/(L+1)^2,
    (2L+4) Zt^(3) = -L a_2 - p a_1 + (a_0 - 2 p) Zt^(2),
    and for n >= 0

    (2L+n+5) Zt^(n+4) = -L a_{n+3} - p a_{n+2}
                        + sum_{m=0}^{n+1} a_m Zt^(3+n-m)
                        + sum_{m=0}^{n}   Zt^(m+2) Zt^(n-m+2)
                        - 2 p Zt^(n+3).

    Requires L > -1, L != 0.
    """
    L, eta, is_exact = _pick_mode(params, exact)
    cap = 40 if is_exact else 64
    if not 2 <= k_max <= cap:
        raise ValueError(f"k_max must be in [2, {cap}], got {k_max}")
    a = gen_coeffs_a(params, k_max - 1, exact)
    p = (L + 2) * eta / ((L + 1) * (L + 1))
    one = Fraction(1) if is_exact else 1.0
    Zt: Dict[int, Number] = {}
    Zt[2] = (one - L * a[1] - p * a[0] + p * p) / (2 * L + 3)
    if k_max >= 3:
        Zt[3] = (-L * a[2] - p * a[1] + a[0] * Zt[2] - 2 * p * Zt[2]) / (2 * L + 4)
    for n in range(0, k_max - 3):
        acc = -L * a[n + 3] - p * a[n + 2] - 2 * p * Zt[n + 3]
        for m in range(0, n + 2):
            acc += a[m] * Zt[3 + n - m]
        for m in range(0, n + 1):
            acc += Zt[m + 2] * Zt[n - m + 2]
        Zt[n + 4] = acc / (2 * L + n + 5)
    return RayleighTable(params=params, kind="Ztilde", values=Zt,
                         exact=is_exact)


def euler_rayleigh_bounds(params: CoulombParams, s: int) -> EulerRayleighBounds:
    """Euler-Rayleigh sandwich for the squared first positive zero of F'.

    lower = (Zt^(2s))^(-1/s),  upper = Zt^(2s)/Zt^(2s+2); both converge to
    the true square monotonically as s grows.  Preconditions: L > -1,
    L != 0, eta < 0, s >= 1.  Raises BoundsInvalid when a needed table
    entry is nonpositive (the sandwich would be vacuous).
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if params.is_complex or not float(params.eta) < 0:
        raise GateViolation("two-sided bounds are stated for real L and eta < 0")
    table = rayleigh_Ztilde(params, 2 * s + 2)
    z_lo, z_hi = table[2 * s], table[2 * s + 2]
    if z_lo <= 0 or z_hi <= 0:
        raise BoundsInvalid(
            f"Ztilde^({2 * s}) = {z_lo} or Ztilde^({2 * s + 2}) = {z_hi} "
            "is nonpositive; no valid sandwich")
    lower = float(z_lo) ** (-1.0 / s)
    upper = float(z_lo) / float(z_hi)
    return EulerRayleighBounds(s=s, lower=lower, upper=upper)


# ---------------------------------------------------------------------------
# Laurent coefficients of Z^(k) in 1/L
# ---------------------------------------------------------------------------

#: zeta tables memo: j -> list of EtaPolynomial (index n), extended on demand
_ZETA: Dict[int, List[EtaPolynomial]] = {}


def _two_eta_convolution(alpha: int, other: List[EtaPolynomial],
                         n: int) -> EtaPolynomial:
    """2 eta sum_{l=0}^{n} sum_{m=0}^{l} (-1)^m p_{l-m}^(alpha) other_{n-l}."""
    acc = EtaPolynomial([], Fraction)
    for l in range(n + 1):
        csum = Fraction(0)
        for m in range(l + 1):
            csum += (-1) ** m * p_coeff(alpha, l - m)
        if csum:
            acc = acc + csum * other[n - l]
    return 2 * acc.shift_eta(1)


def _zeta_row_2(n_max: int) -> List[EtaPolynomial]:
    row = [EtaPolynomial([p_coeff(2, 0)])]
    if n_max >= 1:
        row.append(EtaPolynomial([p_coeff(2, 1)]))
    eta2 = EtaPolynomial([0, 0, 1])
    for n in range(0, n_max - 1):
        acc = EtaPolynomial([p_coeff(2, n + 2)])
        csum = Fraction(0)
        for m in range(n + 1):
            csum += (-1) ** m * (m + 1) * p_coeff(2, n - m)
        acc = acc + csum * eta2
        row.append(acc)
    return row


def _zeta_row_even(k: int, n_max: int,
                   lower: Dict[int, List[EtaPolynomial]]) -> List[EtaPolynomial]:
    """Row for superscript 2k, k >= 2."""
    j = 2 * k
    row: List[EtaPolynomial] = []
    z0 = Fraction(0)
    for l in range(k - 1):
        z0 += (lower[2 * l + 2][0] * lower[2 * k - 2 * l - 2][0]).coeff(0)
    row.append(EtaPolynomial([z0 * p_coeff(j, 0)]))
    if n_max >= 1:
        acc = EtaPolynomial([], Fraction)
        for l in range(k - 1):
            for q in range(2):
                conv = EtaPolynomial([], Fraction)
                for m in range(q + 1):
                    conv = conv + lower[2 * l + 2][m] * lower[2 * k - 2 * l - 2][q - m]
                acc = acc + p_coeff(j, 1 - q) * conv
        row.append(acc)
    for n in range(0, n_max - 1):
        acc = EtaPolynomial([], Fraction)
        for l in range(1, k - 1):
            for q in range(n + 1):
                conv = EtaPolynomial([], Fraction)
                for m in range(q + 1):
                    conv = conv + lower[2 * l + 1][m] * lower[2 * k - 2 * l - 1][q - m]
                acc = acc + p_coeff(j, n - q) * conv
        for l in range(k - 1):
            for q in range(n + 3):
                conv = EtaPolynomial([], Fraction)
                for m in range(q + 1):
                    conv = conv + lower[2 * l + 2][m] * lower[2 * k - 2 * l - 2][q - m]
                acc = acc + p_coeff(j, n + 2 - q) * conv
        acc = acc + _two_eta_convolution(j, lower[j - 1], n)
        row.append(acc)
    return row


def _zeta_row_odd(k: int, n_max: int,
                  lower: Dict[int, List[EtaPolynomial]]) -> List[EtaPolynomial]:
    """Row for superscript 2k+1, k >= 1."""
    j = 2 * k + 1
    row: List[EtaPolynomial] = []
    for n in range(n_max + 1):
        acc = _two_eta_convolution(j, lower[j - 1], n)
        if k >= 2:
            for l in range(1, k):
                for q in range(n + 1):
                    conv = EtaPolynomial([], Fraction)
                    for m in range(q + 1):
                        conv = conv + lower[2 * l + 1][m] * lower[2 * k - 2 * l][q - m]
                    acc = acc + p_coeff(j, n - q) * conv
            for l in range(k - 1):
                for q in range(n + 1):
                    conv = EtaPolynomial([], Fraction)
                    for m in range(q + 1):
                        conv = conv + lower[2 * l + 2][m] * lower[2 * k - 2 * l - 1][q - m]
                    acc = acc + p_coeff(j, n - q) * conv
        row.append(acc)
    return row


def _ensure_zeta(j_max: int, n_max: int) -> None:
    need_extend = any(
        j not in _ZETA or len(_ZETA[j]) < n_max + 1
        for j in range(2, j_max + 1))
    if not need_extend:
        return
    # rebuild rows bottom-up; each row only needs rows below it at the same n
    fresh: Dict[int, List[EtaPolynomial]] = {}
    # even rows at superscript j need lower rows up to n_max + 2
    inner_n = n_max + 2
    fresh[2] = _zeta_row_2(inner_n)
    for j in range(3, j_max + 1):
        if j % 2 == 0:
            fresh[j] = _zeta_row_even(j // 2, inner_n, fresh)
        else:
            fresh[j] = _zeta_row_odd((j - 1) // 2, inner_n, fresh)
    for j, row in fresh.items():
        if j not in _ZETA or len(_ZETA[j]) < len(row):
            _ZETA[j] = row


def zeta_coeffs(k: int, n_max: int) -> List[EtaPolynomial]:
    """Laurent coefficients zeta_0^(k) .. zeta_{n_max}^(k) of Z^(k) as exact
    polynomials in eta.

    The expansion solved order by order from the Z recurrences is

        Z^(2m)   = L^-(2m-1) sum_n zeta_n^(2m)   L^-n,
        Z^(2m+1) = L^-(2m+1) sum_n zeta_n^(2m+1) L^-n.

    Preconditions: k >= 2, n_max >= 0.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    _ensure_zeta(k, n_max)
    return list(_ZETA[k][: n_max + 1])


def zeta_laurent_eval(k: int, params: CoulombParams, n_terms: int) -> float:
    """Numerically sum the Laurent expansion of Z^(k) through L^-(n_terms)
    *inclusive* (n = 0 .. n_terms after the leading power).

    Emits RegionWarning when L <= k + 1, where the truncated tail is not
    small and the value is only indicative.
    """
    if params.is_complex:
        raise GateViolation("the Laurent evaluation needs real L")
    L = float(params.L)
    eta = float(params.eta)
    if L <= 0:
        raise GateViolation("the Laurent expansion is in 1/L with L > 0")
    if L <= k + 1:
        warnings.warn(
            f"L = {L} <= k + 1 = {k + 1}: Laurent truncation error is not "
            "small here", RegionWarning, stacklevel=2)
    rows = zeta_coeffs(k, n_terms)
    u = 1.0 / L
    acc = 0.0
    for n in range(n_terms, -1, -1):
        acc = acc * u + rows[n](eta)
    lead = k - 1 if k % 2 == 0 else k
    return acc * u ** lead
