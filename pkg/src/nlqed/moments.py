"""Fermion anomalous magnetic moment.

    delta_mu = (alpha/pi) m^2 int_0^1 z (1 - z) K1(m^2 z) dz

The quadrature is always available; the small- and large-mass expansions
are attached as cross-checks inside their validity windows.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .quadrature import DEFAULT_CONFIG, QuadratureConfig, QuadratureResult, integrate_finite
from .renorm import EXPERIMENTAL_ALPHA_INV, Coupling
from .specfun import EULER_GAMMA, bessel_k1

SMALL_M_MAX = 0.3
LARGE_M_MIN = 1.0
REGIMES = ("auto", "exact", "small", "large")

LOCAL_G2_COEFFICIENT = 0.76
G2_EXPERIMENT = 0.001165923
# Values as printed alongside the local-theory comparison.
PRINTED_G2_THEORY = 0.0011655102
PRINTED_G2_DIFFERENCE = 0.000000413
PRINTED_G2_ADJUSTED = 0.000000493

PREDICTION_COUPLING = Coupling(EXPERIMENTAL_ALPHA_INV)


class ExtrapolationWarning(UserWarning):
    """An expansion was evaluated outside its validity window."""


@dataclass(frozen=True)
class LeptonSpec:
    name: str
    mass: float

    def __post_init__(self):
        if not self.mass > 0.0:
            raise ValueError("lepton mass must be positive")


LEPTONS = (
    LeptonSpec("electron", 5e-4),
    LeptonSpec("muon", 0.1),
    LeptonSpec("tau", 1.78),
)


@dataclass(frozen=True)
class MomentResult:
    mass: float
    regime_used: str
    schwinger_term: float
    exact: float | None = None
    small_m: float | None = None
    large_m: float | None = None
    error_estimate: float = 0.0
    converged: bool = True
    name: str = ""


@dataclass(frozen=True)
class G2Comparison:
    alpha_inv: float
    theory_local: float
    experiment: float
    difference: float
    nonlocal_correction: float
    adjusted_difference: float
    printed_theory: float = PRINTED_G2_THEORY
    printed_difference: float = PRINTED_G2_DIFFERENCE
    printed_adjusted: float = PRINTED_G2_ADJUSTED


def _check_mass(m):
    if not (math.isfinite(m) and m > 0.0):
        raise ValueError(f"mass must be positive, got {m!r}")


def schwinger_term(c: Coupling = PREDICTION_COUPLING) -> float:
    return c.alpha / (2.0 * math.pi)


def anomalous_moment_exact(
    m: float,
    c: Coupling = PREDICTION_COUPLING,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> QuadratureResult:
    _check_mass(m)
    m2 = m * m

    def integrand(z):
        x = m2 * z
        return x * bessel_k1(x) * (1.0 - z)

    points = (1.0 / m2,) if m2 > 1.0 else ()
    r = integrate_finite(integrand, 0.0, 1.0, cfg, points=points)
    scale = c.alpha / math.pi
    return QuadratureResult(scale * r.value, scale * r.error_estimate, r.evaluations, r.converged)


def small_m_correction(m: float, c: Coupling = PREDICTION_COUPLING) -> float:
    """Leading non-local shift: (alpha/2pi) (m^4/12) (C - 13/12 - ln 2 + ln m^2)."""
    _check_mass(m)
    bracket = EULER_GAMMA - 13.0 / 12.0 - math.log(2.0) + 2.0 * math.log(m)
    return schwinger_term(c) * m ** 4 / 12.0 * bracket


def anomalous_moment_small_m(m: float, c: Coupling = PREDICTION_COUPLING) -> float:
    _check_mass(m)
    if m > SMALL_M_MAX:
        warnings.warn(f"small-mass expansion used at m={m:g} > {SMALL_M_MAX}", ExtrapolationWarning, stacklevel=2)
    return schwinger_term(c) + small_m_correction(m, c)


def anomalous_moment_large_m(m: float, c: Coupling = PREDICTION_COUPLING) -> float:
    _check_mass(m)
    if m < LARGE_M_MIN:
        warnings.warn(f"large-mass expansion used at m={m:g} < {LARGE_M_MIN}", ExtrapolationWarning, stacklevel=2)
    return c.alpha / (2.0 * m * m)


def moment_result(
    m: float,
    c: Coupling = PREDICTION_COUPLING,
    regime: str = "auto",
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    name: str = "",
) -> MomentResult:
    """Evaluate the requested regime(s).

    ``auto`` always runs the quadrature and adds whichever expansion is
    inside its window; the named regimes compute only that form.
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    fields = {}
    if regime in ("auto", "exact"):
        r = anomalous_moment_exact(m, c, cfg)
        fields.update(exact=r.value, error_estimate=r.error_estimate, converged=r.converged)
    if regime == "small" or (regime == "auto" and m <= SMALL_M_MAX):
        fields["small_m"] = anomalous_moment_small_m(m, c)
    if regime == "large" or (regime == "auto" and m >= LARGE_M_MIN):
        fields["large_m"] = anomalous_moment_large_m(m, c)
    return MomentResult(mass=m, regime_used=regime, schwinger_term=schwinger_term(c), name=name, **fields)


def lepton_table(c: Coupling = PREDICTION_COUPLING, cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[MomentResult]:
    return [moment_result(lep.mass, c, "auto", cfg, name=lep.name) for lep in LEPTONS]


def local_theory_g2(c: Coupling = PREDICTION_COUPLING) -> float:
    """alpha/2pi + 0.76 (alpha/pi)^2."""
    return schwinger_term(c) + LOCAL_G2_COEFFICIENT * (c.alpha / math.pi) ** 2


def g_minus_2_comparison(c_local: Coupling = PREDICTION_COUPLING, muon_mass: float = 0.1) -> G2Comparison:
    """Muon (g-2)/2: local theory vs experiment, plus the non-local shift.

    The printed adjusted difference is carried for reference only; it does
    not follow from the printed difference and correction.
    """
    theory = local_theory_g2(c_local)
    diff = G2_EXPERIMENT - theory
    corr = small_m_correction(muon_mass, c_local)
    return G2Comparison(
        alpha_inv=c_local.alpha_inv,
        theory_local=theory,
        experiment=G2_EXPERIMENT,
        difference=diff,
        nonlocal_correction=corr,
        adjusted_difference=diff - corr,
    )
