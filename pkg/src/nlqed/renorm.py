"""Renormalization-constant ratios and the renormalized coupling.

Only the ratios Z1/Z2 and Z4/Z3 are ever formed.  The on-shell photon
coefficients come in two flavours: closed forms, and an explicit
integration over the proper-time variable sigma and the weight variable
``alpha_w`` in [-1, 1] (named to keep it apart from the coupling).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    QuadratureResult,
    integrate_finite,
    integrate_semi_infinite,
)
from .specfun import bessel_k1

BARE_ALPHA_INV = 136.0
EXPERIMENTAL_ALPHA_INV = 137.0359
# alpha_inv shift at first order in the massless limit: (3/pi + 1/(4 pi))
ALPHA_INV_SHIFT = 13.0 / (4.0 * math.pi)

_PI2 = math.pi * math.pi


@dataclass(frozen=True)
class Coupling:
    """Fine-structure constant alpha = e^2 / (4 pi), stored as 1/alpha."""

    alpha_inv: float = BARE_ALPHA_INV

    def __post_init__(self):
        if not (math.isfinite(self.alpha_inv) and self.alpha_inv > 1.0):
            raise ValueError(f"alpha_inv must be finite and > 1, got {self.alpha_inv!r}")

    @property
    def alpha(self) -> float:
        return 1.0 / self.alpha_inv

    @property
    def e_squared(self) -> float:
        return 4.0 * math.pi / self.alpha_inv


@dataclass(frozen=True)
class ZRatioReport:
    mass: float
    alpha_inv: float
    z1_over_z2: float
    z4_over_z3: float
    combined_first_order: float
    combined_exact_product: float
    renormalized_alpha_inv: float
    error_estimate: float = 0.0
    converged: bool = True


def rho_photon(p2: float) -> float:
    """Photon form factor sin(p^2)/p^2, equal to 1 at p^2 = 0."""
    if abs(p2) < 1e-4:
        q = p2 * p2
        return 1.0 - q / 6.0 + q * q / 120.0
    return math.sin(p2) / p2


def j1_integral(m: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadratureResult:
    """m^2 * int_0^1 z (1 + z) K1(m^2 z) dz.

    Tends to 3/2 as m -> 0 and to (pi/2 + 2/m^2)/m^2 for large m.
    """
    if not (math.isfinite(m) and m > 0.0):
        raise ValueError(f"mass must be positive, got {m!r}")
    m2 = m * m

    def integrand(z: float) -> float:
        x = m2 * z
        return x * bessel_k1(x) * (1.0 + z)

    # The K1 decay length in z is 1/m^2; seed a breakpoint there.
    points = (1.0 / m2,) if m2 > 1.0 else ()
    return integrate_finite(integrand, 0.0, 1.0, cfg, points=points)


def z1_over_z2(m: float, c: Coupling = Coupling(), cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    return _z1_over_z2(m, c, cfg)[0]


def _z1_over_z2(m, c, cfg):
    j = j1_integral(m, cfg)
    return 1.0 - c.alpha / math.pi * j.value, j


def i_half_on_shell(c: Coupling = Coupling()) -> float:
    """Spin-1/2 coefficient I(0) = -e^2 / (48 pi^2) = -alpha / (12 pi)."""
    return -c.e_squared / (48.0 * _PI2)


def i_zero_on_shell(c: Coupling = Coupling()) -> float:
    """Spin-0 coefficient I(0) = -e^2 / (24 pi^2) = -alpha / (6 pi)."""
    return -c.e_squared / (24.0 * _PI2)


@dataclass(frozen=True)
class OnShellCoefficients:
    """I(0)/e^2 for both dissociation channels, with the per-stage checks."""

    spin_half: float
    spin_zero: float
    converged: bool
    sigma_checks: tuple = field(default=())

    def __iter__(self):
        return iter((self.spin_half, self.spin_zero))


SIGMA_CHECK_WEIGHTS = (0.125, 0.25, 0.5, 0.75, 1.0)


def _sigma_cubic(w: float, cfg: QuadratureConfig) -> QuadratureResult:
    return integrate_semi_infinite(lambda s: s / (s + w) ** 3, 0.0, cfg)


def _sigma_quartic(w: float, cfg: QuadratureConfig) -> QuadratureResult:
    return integrate_semi_infinite(lambda s: s * s / (s + w) ** 4, 0.0, cfg)


def verify_i_on_shell_by_quadrature(cfg: QuadratureConfig = DEFAULT_CONFIG) -> OnShellCoefficients:
    """Rebuild the on-shell coefficients I(0)/e^2 by explicit integration.

    The z integrals are elementary: int_0^1 (1/2 - 2 s z/(s + w)) dz =
    1/2 - s/(s + w) for spin 1/2, and int_0^1 z dz = 1/2 for spin 0.  The
    sigma integrals are done numerically for w > 0; for w < 0 they diverge
    as written (pole at s = -w) and are continued analytically from their
    w > 0 closed forms 1/(2w) and 1/(3w).  The result is integrated over
    w in [-1, 1] with measure w dw / 2 and multiplied by 1/(4 pi^2).
    """
    checks = []
    converged = True
    for w in SIGMA_CHECK_WEIGHTS:
        cubic = _sigma_cubic(w, cfg)
        quartic = _sigma_quartic(w, cfg)
        converged &= cubic.converged and quartic.converged
        checks.append((w, cubic.value, 1.0 / (2.0 * w), quartic.value, 1.0 / (3.0 * w)))

    flags = []

    def half_weight_numeric(w):
        r = integrate_semi_infinite(lambda s: s / (s + w) ** 3 * (0.5 - s / (s + w)), 0.0, cfg)
        flags.append(r.converged)
        return 0.5 * w * r.value

    def zero_weight_numeric(w):
        r = _sigma_quartic(w, cfg)
        flags.append(r.converged)
        return 0.5 * w * 0.5 * r.value

    def half_weight_continued(w):
        return 0.5 * w * (0.5 / (2.0 * w) - 1.0 / (3.0 * w))

    def zero_weight_continued(w):
        return 0.5 * w * 0.5 / (3.0 * w)

    parts = [
        integrate_finite(half_weight_continued, -1.0, 0.0, cfg),
        integrate_finite(half_weight_numeric, 0.0, 1.0, cfg),
        integrate_finite(zero_weight_continued, -1.0, 0.0, cfg),
        integrate_finite(zero_weight_numeric, 0.0, 1.0, cfg),
    ]
    converged &= all(flags) and all(p.converged for p in parts)
    norm = 1.0 / (4.0 * _PI2)
    spin_half = norm * (parts[0].value + parts[1].value)
    spin_zero = -norm * (parts[2].value + parts[3].value)
    return OnShellCoefficients(spin_half, spin_zero, converged, tuple(checks))


def z4_over_z3(c: Coupling = Coupling()) -> float:
    """1 - alpha/(12 pi) - alpha/(6 pi) = 1 - alpha/(4 pi)."""
    direct = 1.0 - c.alpha / (12.0 * math.pi) - c.alpha / (6.0 * math.pi)
    via_sum = 1.0 + i_half_on_shell(c) + i_zero_on_shell(c)
    if not math.isclose(direct, via_sum, rel_tol=0.0, abs_tol=4 * 2.2e-16):
        raise ArithmeticError("Z4/Z3 disagrees with the sum of on-shell coefficients")
    return direct


def renormalized_alpha_inv(
    c: Coupling = Coupling(),
    mass: float | None = None,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> ZRatioReport:
    """Renormalized 1/alpha from (Z1/Z2)^2 (Z4/Z3) at first order.

    With ``mass=None`` the fermion is massless and the shift is exactly
    13/(4 pi).  For a finite mass Z1/Z2 comes from quadrature and the shift
    is (2 J1(m) + 1/4)/pi.
    """
    a = c.alpha
    z43 = z4_over_z3(c)
    if mass is None:
        z12 = 1.0 - 3.0 * a / (2.0 * math.pi)
        shift = ALPHA_INV_SHIFT
        err, ok, m = 0.0, True, 0.0
    else:
        z12, j = _z1_over_z2(mass, c, cfg)
        shift = (2.0 * j.value + 0.25) / math.pi
        err, ok, m = 2.0 * j.error_estimate / math.pi, j.converged, mass
    return ZRatioReport(
        mass=m,
        alpha_inv=c.alpha_inv,
        z1_over_z2=z12,
        z4_over_z3=z43,
        combined_first_order=1.0 + shift * a,
        # (Z2/Z1)^2 (Z3/Z4) with each ratio kept at first order, e.g. (1 + 3a/pi)(1 + a/4pi)
        combined_exact_product=(1.0 + 2.0 * (1.0 - z12)) * (1.0 + a / (4.0 * math.pi)),
        renormalized_alpha_inv=c.alpha_inv + shift,
        error_estimate=err,
        converged=ok,
    )
