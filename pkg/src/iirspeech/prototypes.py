"""Normalized analog low-pass prototypes and their closed-form magnitude laws.

Every prototype has its passband edge at 1 rad/s except Butterworth, whose
half-power point sits at 1 rad/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import elliptic as ell
from .errors import InfeasibleSpecError, InvalidFrequencyError, InvalidOrderError, InvalidRippleError


@dataclass(frozen=True)
class AnalogPrototype:
    zeros: np.ndarray
    poles: np.ndarray
    gain: float
    # selectivity data for elliptic designs, None otherwise
    params: EllipticParams | None = field(default=None, compare=False)

    def response(self, omega) -> np.ndarray:
        """Complex H(j*omega) from the factored form."""
        s = 1j * np.asarray(omega, dtype=float)
        num = np.ones_like(s)
        for z in self.zeros:
            num = num * (s - z)
        den = np.ones_like(s)
        for p in self.poles:
            den = den * (s - p)
        return self.gain * num / den

    @property
    def order(self) -> int:
        return len(self.poles)


@dataclass(frozen=True)
class ButterworthMetrics:
    magnitude_sq: float
    attenuation_db: float
    selectivity: float


@dataclass(frozen=True)
class EllipticParams:
    epsilon: float
    xi: float
    discrimination: float
    modulus: float
    quarter_period: float


def _check_order(order) -> int:
    if isinstance(order, bool) or int(order) != order or order < 1:
        raise InvalidOrderError(f"filter order must be a positive integer, got {order!r}")
    return int(order)


def _conjugate_closed(upper: np.ndarray, real: list) -> np.ndarray:
    # poles built from upper-half representatives so pairs are exact conjugates
    return np.concatenate([upper, upper.conj(), np.asarray(real, dtype=complex)])


def _gain_for_dc(poles, zeros, dc_gain: float) -> float:
    return float(np.real(dc_gain * np.prod(-poles) / np.prod(-zeros)))


def butterworth_prototype(order: int) -> AnalogPrototype:
    """Butterworth poles on the left unit semicircle, DC gain exactly 1."""
    n = _check_order(order)
    k = np.arange(1, n // 2 + 1)
    poles = _conjugate_closed(np.exp(1j * np.pi * (2 * k + n - 1) / (2 * n)), [-1.0] * (n % 2))
    return AnalogPrototype(np.array([], dtype=complex), poles, _gain_for_dc(poles, np.array([]), 1.0))


def butterworth_metrics(omega: float, omega_c: float, order: int) -> ButterworthMetrics:
    if not omega_c > 0:
        raise InvalidFrequencyError(f"cutoff must be positive, got {omega_c!r}")
    if omega < 0:
        raise InvalidFrequencyError(f"frequency must be non-negative, got {omega!r}")
    n = _check_order(order)
    ratio_pow = (omega / omega_c) ** (2 * n)
    return ButterworthMetrics(
        magnitude_sq=1.0 / (1.0 + ratio_pow),
        attenuation_db=10.0 * math.log10(1.0 + ratio_pow),
        selectivity=n / (2.0 * math.sqrt(2.0) * omega_c),
    )


def ripple_to_epsilon(ripple_db: float) -> float:
    """Ripple factor for a peak-to-valley ripple given in dB."""
    if not ripple_db > 0:
        raise InvalidRippleError(f"ripple must be positive dB, got {ripple_db!r}")
    return math.sqrt(math.expm1(ripple_db * math.log(10.0) / 10.0))


def chebyshev_poly(order: int, x: float) -> float:
    """Chebyshev polynomial C_N(x) through its trigonometric/hyperbolic forms."""
    if abs(x) <= 1:
        return math.cos(order * math.acos(x))
    value = math.cosh(order * math.acosh(abs(x)))
    return -value if (x < 0 and order % 2) else value


def chebyshev1_magnitude_sq(omega: float, omega_p: float, epsilon: float, order: int) -> float:
    if not omega_p > 0:
        raise InvalidFrequencyError(f"passband edge must be positive, got {omega_p!r}")
    c = chebyshev_poly(order, omega / omega_p)
    return 1.0 / (1.0 + epsilon * epsilon * c * c)


def chebyshev1_prototype(order: int, ripple_db: float) -> AnalogPrototype:
    """Chebyshev type I prototype with passband edge at 1 rad/s.

    Poles lie on an ellipse: ``-sinh(mu) sin(theta_k) + j cosh(mu) cos(theta_k)``
    with ``mu = asinh(1/eps)/N`` and ``theta_k = (2k-1) pi / (2N)``.
    """
    n = _check_order(order)
    eps = ripple_to_epsilon(ripple_db)
    mu = math.asinh(1.0 / eps) / n
    theta = (2 * np.arange(1, n // 2 + 1) - 1) * np.pi / (2 * n)
    upper = -math.sinh(mu) * np.sin(theta) + 1j * math.cosh(mu) * np.cos(theta)
    poles = _conjugate_closed(upper, [-math.sinh(mu)] * (n % 2))
    dc = 1.0 if n % 2 else 1.0 / math.sqrt(1.0 + eps * eps)
    return AnalogPrototype(np.array([], dtype=complex), poles, _gain_for_dc(poles, np.array([]), dc))


def elliptic_magnitude(omega: float, omega_p: float, epsilon: float, xi: float, order: int) -> float:
    if not omega_p > 0:
        raise InvalidFrequencyError(f"passband edge must be positive, got {omega_p!r}")
    r = ell.elliptic_rational(order, xi, omega / omega_p)
    return 1.0 / math.sqrt(1.0 + epsilon * epsilon * r * r)


def elliptic_params(order: int, passband_ripple_db: float, stopband_atten_db: float) -> EllipticParams:
    """Consistent ``(eps, xi, L)`` for an order-``N`` design meeting ``rp``/``rs`` exactly.

    ``xi`` comes from bisection on the degree equation; the discrimination
    factor is then recomputed from ``xi`` so that every downstream quantity
    (zeros, poles, stopband level) is derived from the same modulus.
    """
    n = _check_order(order)
    if not 0 < passband_ripple_db < stopband_atten_db:
        raise InfeasibleSpecError(
            f"need 0 < passband ripple < stopband attenuation, got {passband_ripple_db!r}, {stopband_atten_db!r}"
        )
    eps = ripple_to_epsilon(passband_ripple_db)
    target_k1 = eps / math.sqrt(math.expm1(stopband_atten_db * math.log(10.0) / 10.0))
    xi = ell.solve_selectivity(n, target_k1)
    k = 1.0 / xi
    return EllipticParams(
        epsilon=eps,
        xi=xi,
        discrimination=1.0 / ell.degree_modulus(n, k),
        modulus=k,
        quarter_period=ell.complete_elliptic_integral(k),
    )


def elliptic_prototype(order: int, passband_ripple_db: float, stopband_atten_db: float) -> AnalogPrototype:
    """Elliptic (Cauer) prototype, passband edge at 1 rad/s, stopband edge at ``xi``.

    Zeros sit at ``+-j / (k cd(u_i K, k))``; poles at ``j cd((u_i - j v0) K, k)``
    plus ``j sn(j v0 K, k)`` for odd orders, where ``u_i = (2i-1)/N`` and
    ``v0`` is fixed by the ripple factor through ``sn(j N v0 K1, k1) = j/eps``.
    """
    params = elliptic_params(order, passband_ripple_db, stopband_atten_db)
    n = _check_order(order)
    k = params.modulus
    k1 = 1.0 / params.discrimination
    u = (2 * np.arange(1, n // 2 + 1) - 1) / n
    zeta = np.real(ell.cde(u, k))
    zero_half = 1j / (k * zeta)
    v0 = float(np.real(-1j * ell.asne(1j / params.epsilon, k1) / n))
    pole_half = 1j * ell.cde(u - 1j * v0, k)
    # one representative per conjugate pair is taken from the upper half plane
    pole_half = np.where(pole_half.imag < 0, pole_half.conj(), pole_half)
    zeros = _conjugate_closed(zero_half, [])
    real_pole = [float(np.real(1j * ell.sne(1j * v0, k)))] * (n % 2)
    poles = _conjugate_closed(pole_half, real_pole)
    dc = 1.0 if n % 2 else 1.0 / math.sqrt(1.0 + params.epsilon**2)
    return AnalogPrototype(zeros, poles, _gain_for_dc(poles, zeros, dc), params)


def passband_edge(family: str, order: int, passband_ripple_db: float) -> float:
    """Prototype frequency (rad/s) at which the attenuation equals ``rp``.

    1 for Chebyshev and elliptic; ``eps**(1/N)`` for Butterworth, whose
    prototype is normalized to its half-power point instead.
    """
    if family == "butterworth":
        return ripple_to_epsilon(passband_ripple_db) ** (1.0 / order)
    return 1.0


def design_prototype(family: str, order: int, passband_ripple_db: float, stopband_atten_db: float) -> AnalogPrototype:
    if family == "butterworth":
        return butterworth_prototype(order)
    if family == "chebyshev1":
        return chebyshev1_prototype(order, passband_ripple_db)
    if family == "elliptic":
        return elliptic_prototype(order, passband_ripple_db, stopband_atten_db)
    raise ValueError(f"unknown filter family {family!r}")
