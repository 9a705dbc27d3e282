"""Elliptic integrals, Jacobi elliptic functions and the elliptic rational function.

All routines take the modulus ``k`` (not the parameter ``m = k**2``).

Two families of Jacobi-function evaluators live here:

* :func:`jacobi_elliptic` -- real argument, returns ``(sn, cn, dn)`` using the
  AGM / descending Landen (Gauss) transformation with phase back-substitution.
* :func:`cde`, :func:`sne` and their inverses -- argument normalized by the
  quarter period, ``cde(u, k) == cd(u*K(k), k)``, valid for complex ``u``.
  These ascend a precomputed Landen modulus sequence and are what the
  elliptic filter construction needs (poles sit at complex arguments).
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DivergentIntegralError, InvalidModulusError, InvalidOrderError, InvalidSelectivityError

AGM_TOL = 1e-14
LANDEN_TOL = 1e-15


def _check_modulus(k: float) -> None:
    if not math.isfinite(k) or k < 0:
        raise InvalidModulusError(f"modulus must be in [0, 1), got {k!r}")
    if k >= 1:
        raise DivergentIntegralError(f"K(k) diverges for modulus k={k!r} >= 1")


def agm(a: float, b: float, tol: float = AGM_TOL) -> float:
    """Arithmetic-geometric mean of two non-negative numbers."""
    for _ in range(64):
        if abs(a - b) <= tol * abs(a):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def quarter_period_from_complement(kp: float) -> float:
    """K(k) given the complementary modulus ``kp = sqrt(1 - k**2)``.

    Taking ``kp`` directly keeps full precision when ``k`` is very close to 1.
    """
    if kp <= 0:
        raise DivergentIntegralError("K(k) diverges for complementary modulus 0")
    return math.pi / (2.0 * agm(1.0, kp))


def complete_elliptic_integral(k: float) -> float:
    """Complete elliptic integral of the first kind K(k).

    >>> round(complete_elliptic_integral(0.0), 12) == round(math.pi / 2, 12)
    True
    """
    _check_modulus(k)
    return quarter_period_from_complement(math.sqrt((1.0 - k) * (1.0 + k)))


def complementary_integral(k: float) -> float:
    """K'(k) = K(sqrt(1 - k**2)), for ``0 < k <= 1``."""
    if not 0 < k <= 1:
        raise InvalidModulusError(f"K'(k) needs 0 < k <= 1, got {k!r}")
    return quarter_period_from_complement(k)


def jacobi_elliptic(u: float, k: float) -> tuple[float, float, float]:
    """Jacobi elliptic functions ``(sn, cn, dn)`` of real argument ``u``.

    Descending Landen sequence via the AGM, then the amplitude is recovered by
    back-substitution ``phi[n-1] = (phi[n] + asin(c[n]/a[n] * sin(phi[n]))) / 2``.
    """
    _check_modulus(k)
    a = [1.0]
    c = [k]
    b = math.sqrt((1.0 - k) * (1.0 + k))
    while abs(c[-1]) > AGM_TOL * a[-1] and len(a) < 64:
        an, bn, cn = 0.5 * (a[-1] + b), math.sqrt(a[-1] * b), 0.5 * (a[-1] - b)
        a.append(an)
        c.append(cn)
        b = bn
    n = len(a) - 1
    phi = (2.0**n) * a[n] * u
    for i in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[i] / a[i] * math.sin(phi)))
    sn = math.sin(phi)
    cn = math.cos(phi)
    # dn >= k' > 0, so the square root form is well conditioned for k < 1
    dn = math.sqrt(1.0 - k * k * sn * sn)
    return sn, cn, dn


def landen_sequence(k: float, tol: float = LANDEN_TOL) -> list[float]:
    """Descending Landen moduli ``k_1, k_2, ...`` starting from ``k``.

    Iterates ``k_n = (k_{n-1} / (1 + k'_{n-1}))**2`` until the modulus drops
    below ``tol``; five or six steps suffice for any ``k < 1 - 1e-12``.
    """
    seq = []
    while k > tol:
        kp = math.sqrt((1.0 - k) * (1.0 + k))
        k = (k / (1.0 + kp)) ** 2
        seq.append(k)
    return seq


def _ascend(w, seq):
    for kn in reversed(seq):
        w = (1.0 + kn) * w / (1.0 + kn * w * w)
    return w


def cde(u, k: float):
    """``cd(u*K, k)`` for real or complex (array) ``u``."""
    return _ascend(np.cos(np.asarray(u) * np.pi / 2), landen_sequence(k))


def sne(u, k: float):
    """``sn(u*K, k)`` for real or complex (array) ``u``."""
    return _ascend(np.sin(np.asarray(u) * np.pi / 2), landen_sequence(k))


def acde(w, k: float):
    """Inverse of :func:`cde`: returns normalized ``u`` with ``cd(u*K, k) == w``."""
    w = np.asarray(w, dtype=complex)
    prev = k
    for kn in landen_sequence(k):
        w = w / (1.0 + np.sqrt(1.0 - w * w * prev * prev)) * 2.0 / (1.0 + kn)
        prev = kn
    return 2.0 / np.pi * np.arccos(w)


def asne(w, k: float):
    """Inverse of :func:`sne`."""
    return 1.0 - acde(w, k)


def degree_modulus(order: int, k: float) -> float:
    """Modulus ``k1`` tied to ``k`` by the order-``N`` degree equation.

    Uses the exact product ``k1 = k**N * prod(sn(u_i*K, k)**4)`` with
    ``u_i = (2i - 1)/N`` for ``i = 1..N//2``.  The discrimination factor of
    the matching elliptic rational function is ``1/k1``.
    """
    kk = complete_elliptic_integral(k)
    k1 = k**order
    for i in range(1, order // 2 + 1):
        sn, _, _ = jacobi_elliptic((2 * i - 1) / order * kk, k)
        k1 *= sn**4
    return k1


def degree_ratio(k: float, k1: float) -> float:
    """Order (generally non-integer) needed to reach ``k1`` from selectivity modulus ``k``.

    ``N = K(k) K'(k1) / (K'(k) K(k1))``.
    """
    return (
        complete_elliptic_integral(k) * complementary_integral(k1)
        / (complementary_integral(k) * complete_elliptic_integral(k1))
    )


def solve_selectivity(order: int, k1: float, tol: float = 1e-10) -> float:
    """Selectivity factor ``xi > 1`` at which an order-``N`` design attains ``k1``.

    Bisection on ``xi`` over the degree equation.  The returned value is the
    upper end of the final bracket, so the stopband spec is never undershot.
    """
    if order < 1:
        raise InvalidOrderError(f"order must be >= 1, got {order!r}")
    if not 0 < k1 < 1:
        raise InvalidModulusError(f"k1 must be in (0, 1), got {k1!r}")

    def excess(xi: float) -> float:
        # positive when xi is too close to 1 (more selectivity than N can deliver)
        return degree_ratio(1.0 / xi, k1) - order

    lo, hi = 1.0 + 1e-15, 2.0
    while excess(hi) > 0:
        lo, hi = hi, 2.0 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return hi


def elliptic_rational(order: int, xi: float, x: float) -> float:
    """Elliptic rational function ``R_N(xi, x)``.

    Evaluated through the nested parameterization
    ``R_N(cd(u*K, k)) = cd(N*u*K1, k1)`` with ``k = 1/xi`` and ``k1`` from
    :func:`degree_modulus`.  ``N = 1`` is the identity.
    """
    if order < 1:
        raise InvalidOrderError(f"order must be >= 1, got {order!r}")
    if not xi > 1:
        raise InvalidSelectivityError(f"selectivity factor must exceed 1, got {xi!r}")
    if order == 1:
        return float(x)
    k = 1.0 / xi
    k1 = degree_modulus(order, k)
    u = acde(x, k)
    return float(np.real(cde(order * u, k1)))
