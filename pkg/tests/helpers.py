"""Test-only oracles shared by several modules."""

import math

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from scipy import optimize


def refined_extrema(fn, lo, hi, points=20001):
    """Values of ``fn`` at its interior local extrema on [lo, hi] plus both endpoints.

    Extrema are bracketed on a dense grid and polished with a bounded scalar
    optimizer, so the returned values are the true extreme levels rather than
    grid samples.
    """
    x = np.linspace(lo, hi, points)
    y = np.array([fn(v) for v in x])
    d = np.diff(y)
    values = [y[0]]
    for i in range(1, len(d)):
        if d[i - 1] > 0 >= d[i] or d[i - 1] < 0 <= d[i]:
            is_max = d[i - 1] > 0
            a, b = x[i - 1], x[i + 1]
            sign = -1.0 if is_max else 1.0
            res = optimize.minimize_scalar(lambda t: sign * fn(t), bounds=(a, b), method="bounded",
                                           options={"xatol": 1e-13})
            values.append(fn(res.x))
    values.append(y[-1])
    return np.array(values)


def db(x):
    return 20 * np.log10(np.abs(x))


def product_R(order, xi, x):
    """Elliptic rational function from its zero/pole factorization.

    Needs only ``k = 1/xi`` and the real Jacobi functions, not the degree
    equation or the complex Landen machinery.
    """
    from iirspeech import elliptic as ell

    k = 1.0 / xi
    kk = ell.complete_elliptic_integral(k)
    out = x ** (order % 2)
    for i in range(1, order // 2 + 1):
        sn, cn, dn = ell.jacobi_elliptic((2 * i - 1) / order * kk, k)
        z = cn / dn  # cd(u_i K)
        out *= (x * x - z * z) * (1 - k * k * z * z) / ((1 - k * k * z * z * x * x) * (1 - z * z))
    return out


def edge_attenuations(family, order, ratio, rp):
    """(loss at the passband edge, loss at the stopband edge) in dB for a
    unit-passband design of ``order``, straight from the magnitude laws."""
    eps2 = 10 ** (rp / 10) - 1
    if family == "butterworth":
        # half-power point placed so the passband edge sees exactly rp
        wc = eps2 ** (-1 / (2 * order))
        pass_loss = 10 * math.log10(1 + (1 / wc) ** (2 * order))
        return pass_loss, 10 * math.log10(1 + (ratio / wc) ** (2 * order))
    if family == "chebyshev1":
        c = npcheb.chebval(ratio, [0] * order + [1])
        return rp, 10 * math.log10(1 + eps2 * c * c)
    x_pass = np.linspace(0, 1, 2001)
    x_stop = np.linspace(ratio, 50 * ratio, 20001)
    r_pass = np.max(np.abs(product_R(order, ratio, x_pass)))
    r_stop = np.min(np.abs(product_R(order, ratio, x_stop)))
    if order % 2 == 0:
        r_stop = min(r_stop, abs(product_R(order, ratio, 1e12)))
    return 10 * math.log10(1 + eps2 * r_pass**2), 10 * math.log10(1 + eps2 * r_stop**2)


def meets(family, order, ratio, rp, rs):
    a_pass, a_stop = edge_attenuations(family, order, ratio, rp)
    return a_pass <= rp + 1e-9 and a_stop >= rs - 1e-9


def exhaustive_order(family, ratio, rp, rs, limit=30):
    for n in range(1, limit + 1):
        if meets(family, n, ratio, rp, rs):
            return n
    return None
