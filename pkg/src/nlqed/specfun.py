"""Scalar special functions in double precision.

Everything here works in units where hbar = c = kappa = 1, so arguments are
plain dimensionless floats.  No third-party dependencies.
"""
from __future__ import annotations

import math

EULER_GAMMA = 0.57721566490153286060651209008240243
HALF_PI = 0.5 * math.pi

_EPS = 1e-16
_TINY = 1e-300
_MAX_TERMS = 500


def _check_positive(x: float, name: str) -> None:
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"{name} requires a finite positive argument, got {x!r}")


def _k1_series(x: float) -> float:
    # K1(x) = 1/x + (x/2) sum_k t_k [ln(x/2) - (psi(k+1) + psi(k+2))/2],
    # t_k = (x^2/4)^k / (k! (k+1)!)
    y = 0.25 * x * x
    log_half = math.log(0.5 * x)
    term = 1.0
    harmonic = 0.0  # H_k
    total = 0.0
    for k in range(_MAX_TERMS):
        psi_sum = -2.0 * EULER_GAMMA + 2.0 * harmonic + 1.0 / (k + 1)
        contrib = term * (log_half - 0.5 * psi_sum)
        total += contrib
        if abs(contrib) < _EPS * abs(total) and k > 0:
            break
        harmonic += 1.0 / (k + 1)
        term *= y / ((k + 1) * (k + 2))
    return 1.0 / x + 0.5 * x * total


def _k1_continued_fraction(x: float) -> float:
    # Temme's method via Steed's algorithm for K_0, then the ratio K_1/K_0.
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 10 * _MAX_TERMS):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    h *= a1
    k0 = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    return k0 * (x + 0.5 - h) / x


def bessel_k1(x: float) -> float:
    """Modified Bessel function of the second kind of order one (MacDonald K_1).

    Power series with the logarithmic term for ``x <= 2``, Temme's continued
    fraction above.  Underflows to 0.0 past x ~ 745.
    """
    _check_positive(x, "bessel_k1")
    if x <= 2.0:
        return _k1_series(x)
    return _k1_continued_fraction(x)


def _si_ci_series(x: float) -> tuple[float, float]:
    x2 = x * x
    # Si: sum (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
    term = x
    si = x
    k = 0
    while True:
        term *= -x2 / ((2 * k + 2) * (2 * k + 3))
        k += 1
        step = term / (2 * k + 1)
        si += step
        if abs(step) < _EPS * abs(si):
            break
    # Ci: gamma + ln x + sum_{k>=1} (-1)^k x^(2k) / (2k (2k)!)
    term = 1.0
    acc = 0.0
    k = 0
    while True:
        term *= -x2 / ((2 * k + 1) * (2 * k + 2))
        k += 1
        step = term / (2 * k)
        acc += step
        if abs(step) < _EPS * max(abs(acc), 1.0):
            break
    return si, EULER_GAMMA + math.log(x) + acc


def _exp_e1_imag(x: float) -> complex:
    """e^{ix} E_1(ix) by modified Lentz; equals g(x) - i f(x)."""
    b = complex(1.0, x)
    c = 1.0 / _TINY
    d = h = 1.0 / b
    for i in range(2, 10 * _MAX_TERMS):
        a = -float((i - 1) ** 2)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta.real - 1.0) + abs(delta.imag) < _EPS:
            break
    return h


_SERIES_LIMIT = 8.0


def _aux_pair_asymptotic(x: float) -> tuple[float, float]:
    h = _exp_e1_imag(x)
    return -h.imag, h.real


def sin_integral(x: float) -> float:
    """Si(x) = int_0^x sin(t)/t dt for x >= 0."""
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"sin_integral requires finite x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    if x <= _SERIES_LIMIT:
        return _si_ci_series(x)[0]
    f, g = _aux_pair_asymptotic(x)
    return HALF_PI - f * math.cos(x) - g * math.sin(x)


def cos_integral(x: float) -> float:
    """Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt for x > 0."""
    _check_positive(x, "cos_integral")
    if x <= _SERIES_LIMIT:
        return _si_ci_series(x)[1]
    f, g = _aux_pair_asymptotic(x)
    return f * math.sin(x) - g * math.cos(x)


def _aux_pair(a: float) -> tuple[float, float]:
    _check_positive(a, "auxiliary sine/cosine integral")
    if a <= _SERIES_LIMIT:
        si, ci = _si_ci_series(a)
        s, c = math.sin(a), math.cos(a)
        tail = HALF_PI - si
        return ci * s + tail * c, -ci * c + tail * s
    # Same closed forms with the rotation by e^{ia} already applied, so the
    # O(1/a) pieces of Ci and pi/2 - Si do not cancel.
    return _aux_pair_asymptotic(a)


def aux_f(a: float) -> float:
    """f(a) = int_0^inf sin(x)/(x + a) dx = Ci(a) sin a + (pi/2 - Si(a)) cos a."""
    return _aux_pair(a)[0]


def aux_g(a: float) -> float:
    """g(a) = int_0^inf cos(x)/(x + a) dx = -Ci(a) cos a + (pi/2 - Si(a)) sin a."""
    return _aux_pair(a)[1]
