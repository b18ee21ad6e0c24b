"""Self-verification: reproduce every printed result at its tolerance."""
from __future__ import annotations

import math
import random
import sys
from dataclasses import dataclass
from typing import Callable, TextIO

from . import gauge, moments, renorm
from .quadrature import QuadratureConfig, integrate_finite, integrate_semi_infinite
from .report import ReportOptions, run_report, to_json
from .specfun import HALF_PI, bessel_k1


@dataclass(frozen=True)
class Check:
    name: str
    observed: float
    expected: float
    tolerance: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: observed {self.observed:.12g}, "
                f"expected {self.expected:.12g}, tolerance {self.tolerance:.3g}")


def _abs(name, observed, expected, tol) -> Check:
    return Check(name, observed, expected, tol, abs(observed - expected) <= tol)


def _rel(name, observed, expected, tol) -> Check:
    return Check(name, observed, expected, tol, abs(observed - expected) <= tol * abs(expected))


def check_renormalized_constant() -> list[Check]:
    rep = renorm.renormalized_alpha_inv(renorm.Coupling(136.0))
    shift = rep.renormalized_alpha_inv - 136.0
    return [
        _abs("1: renormalized 1/alpha from 136", rep.renormalized_alpha_inv, 137.0345, 5e-4),
        _abs("1: shift equals 13/(4 pi)", shift, 13.0 / (4.0 * math.pi), 2 * math.ulp(137.0)),
    ]


def check_on_shell_coefficients() -> list[Check]:
    res = renorm.verify_i_on_shell_by_quadrature()
    return [
        _rel("2: I_1/2(0)/e^2 by quadrature", res.spin_half, -1.0 / (48.0 * math.pi ** 2), 1e-8),
        _rel("2: I_0(0)/e^2 by quadrature", res.spin_zero, -1.0 / (24.0 * math.pi ** 2), 1e-8),
    ]


def check_z1_over_z2() -> list[Check]:
    c = renorm.Coupling(136.0)
    a = c.alpha
    m = 30.0
    corr = 1.0 - renorm.z1_over_z2(m, c)
    return [
        _abs("3: Z1/Z2 at m=1e-3", renorm.z1_over_z2(1e-3, c), 1.0 - 3.0 * a / (2.0 * math.pi), 1e-7),
        _rel("3: 1 - Z1/Z2 at m=30 vs alpha/(2m^2)", corr, a / (2.0 * m * m), 0.02),
    ]


def check_gauge_condition() -> list[Check]:
    scan = gauge.certify_unique_root(0.01, 50.0, 500)
    worst = max(scan.residuals)
    return [
        Check("4: G(0) equals pi/2", gauge.gauge_lhs(0.0), HALF_PI, 0.0, gauge.gauge_lhs(0.0) == HALF_PI),
        Check("4: no sign change on [0.01, 50], residual < 0", worst, 0.0, 0.0,
              scan.unique_root_at_zero and not scan.brackets and worst < 0.0),
        _abs("4: G(1)", gauge.gauge_lhs(1.0), 0.9648, 1e-3),
    ]


def check_schwinger_limit() -> list[Check]:
    c = moments.PREDICTION_COUPLING
    ratio = moments.anomalous_moment_exact(1e-4, c).value * 2.0 * math.pi / c.alpha
    return [_abs("5: Schwinger limit at m=1e-4", ratio, 1.0, 1e-6)]


def check_muon_correction() -> list[Check]:
    c = moments.PREDICTION_COUPLING
    s = moments.schwinger_term(c)
    small = moments.anomalous_moment_small_m(0.1, c) - s
    exact = moments.anomalous_moment_exact(0.1, c).value - s
    return [
        _abs("6: muon correction, expansion", small, -5.6e-8, 0.1e-8),
        _rel("6: muon correction, quadrature vs expansion", exact, small, 0.05),
    ]


def check_electron_correction() -> list[Check]:
    corr = moments.small_m_correction(5e-4, moments.PREDICTION_COUPLING)
    return [_abs("7: electron correction, expansion", corr, -9.8e-17, 0.3e-17)]


def check_tau_prediction() -> list[Check]:
    val = moments.anomalous_moment_large_m(1.78, renorm.Coupling(137.0359))
    return [_abs("8: tau (g-2)/2", val, 0.001151584, 2e-9)]


def check_local_g2() -> list[Check]:
    cmp = moments.g_minus_2_comparison(renorm.Coupling(137.0359))
    return [
        _abs("9: local-theory (g-2)/2 at 1/137.0359", cmp.theory_local, 0.0011655102, 1e-10),
        _abs("9: experiment minus local theory", cmp.difference, 0.000000413, 1e-9),
    ]


def _k1_integral_rep(x: float) -> float:
    cfg = QuadratureConfig(rel_tol=1e-13, abs_tol=1e-300)

    def f(t):
        if t > 700.0:
            return 0.0
        c = math.cosh(t)
        return math.exp(-x * c) * c

    return integrate_semi_infinite(f, 0.0, cfg).value


def check_properties() -> list[Check]:
    out = []
    rng = random.Random(20240611)
    cfg = QuadratureConfig()

    def fn(z):
        return math.exp(-z) * math.cos(3.0 * z) + math.sqrt(z)

    def gn(z):
        return z * z * math.log1p(z)

    worst_add = 0.0
    for _ in range(5):
        c = rng.uniform(0.0, 2.0)
        whole = integrate_finite(fn, 0.0, 2.0, cfg)
        left = integrate_finite(fn, 0.0, c, cfg)
        right = integrate_finite(fn, c, 2.0, cfg)
        bound = 3.0 * (whole.error_estimate + left.error_estimate + right.error_estimate)
        worst_add = max(worst_add, abs(whole.value - left.value - right.value) / bound)
    out.append(Check("10: quadrature additivity (ratio to bound)", worst_add, 0.0, 1.0, worst_add <= 1.0))

    mix = integrate_finite(lambda z: 2.5 * fn(z) - 0.75 * gn(z), 0.0, 2.0, cfg)
    fi = integrate_finite(fn, 0.0, 2.0, cfg)
    gi = integrate_finite(gn, 0.0, 2.0, cfg)
    lin = 2.5 * fi.value - 0.75 * gi.value
    tol = mix.error_estimate + 2.5 * fi.error_estimate + 0.75 * gi.error_estimate
    out.append(_abs("10: quadrature linearity", mix.value, lin, tol))

    worst_k1 = 0.0
    for i in range(30):
        x = 1e-6 * (50.0 / 1e-6) ** (i / 29)
        worst_k1 = max(worst_k1, abs(bessel_k1(x) / _k1_integral_rep(x) - 1.0))
    out.append(Check("10: K1 vs integral representation on [1e-6, 50]", worst_k1, 0.0, 1e-10, worst_k1 <= 1e-10))

    m1 = integrate_semi_infinite(lambda u: u * bessel_k1(u), 0.0, cfg).value
    m2 = integrate_semi_infinite(lambda u: u * u * bessel_k1(u), 0.0, cfg).value
    out.append(_abs("10: int u K1(u) du", m1, HALF_PI, 1e-9))
    out.append(_abs("10: int u^2 K1(u) du", m2, 2.0, 1e-9))

    opts = ReportOptions(gauge_points=50)
    same = to_json(run_report(opts)) == to_json(run_report(opts))
    out.append(Check("10: byte-identical repeat report", float(same), 1.0, 0.0, same))
    return out


CHECKS: tuple[Callable[[], list[Check]], ...] = (
    check_renormalized_constant,
    check_on_shell_coefficients,
    check_z1_over_z2,
    check_gauge_condition,
    check_schwinger_limit,
    check_muon_correction,
    check_electron_correction,
    check_tau_prediction,
    check_local_g2,
    check_properties,
)


def run_checks() -> list[Check]:
    return [chk for fn in CHECKS for chk in fn()]


def run_verify(stream: TextIO = sys.stdout) -> bool:
    results = run_checks()
    for chk in results:
        print(chk.line(), file=stream)
    failed = sum(not c.passed for c in results)
    print(f"{len(results) - failed}/{len(results)} checks passed", file=stream)
    return failed == 0
