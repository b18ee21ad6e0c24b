"""Gauge condition on the photon polarization tensor at k^2 = 0.

Requiring the non-transverse part to vanish on shell gives

    G(m) = int_0^inf sin x/(x + m^2) dx + m^2 int_0^inf cos x/(x + m^2) dx = pi/2,

and only m = 0 satisfies it.  Uniqueness is certified numerically on a
grid: the residual G(m) - pi/2 must be negative everywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import sign_change_brackets
from .specfun import HALF_PI, aux_f, aux_g


@dataclass(frozen=True)
class GaugeScanResult:
    grid: tuple  # ((m, G(m)), ...) ascending in m
    max_value_on_grid: float
    brackets: tuple
    unique_root_at_zero: bool

    @property
    def residuals(self) -> list[float]:
        return [g - HALF_PI for _, g in self.grid]


def gauge_lhs(m: float) -> float:
    if not math.isfinite(m) or m < 0.0:
        raise ValueError(f"mass must be finite and non-negative, got {m!r}")
    if m == 0.0:
        return HALF_PI
    a = m * m
    return aux_f(a) + a * aux_g(a)


def gauge_residual(m: float) -> float:
    return gauge_lhs(m) - HALF_PI


def certify_unique_root(
    m_min: float = 0.01,
    m_max: float = 50.0,
    points: int = 500,
    spacing: str = "log",
) -> GaugeScanResult:
    """Scan the residual on ``[m_min, m_max]`` and check it never reaches zero.

    This is a grid certificate, not a proof.
    """
    if not (math.isfinite(m_min) and math.isfinite(m_max)) or not 0.0 < m_min < m_max:
        raise ValueError(f"need 0 < m_min < m_max, got [{m_min!r}, {m_max!r}]")
    if points < 2:
        raise ValueError("a scan needs at least two points")
    if spacing == "log":
        ms = np.geomspace(m_min, m_max, points).tolist()
    elif spacing == "linear":
        ms = np.linspace(m_min, m_max, points).tolist()
    else:
        raise ValueError(f"unknown grid spacing {spacing!r}")
    values = [gauge_lhs(m) for m in ms]
    residuals = [g - HALF_PI for g in values]
    brackets = tuple(sign_change_brackets(ms, residuals))
    top = max(values)
    return GaugeScanResult(
        grid=tuple(zip(ms, values)),
        max_value_on_grid=top,
        brackets=brackets,
        unique_root_at_zero=not brackets and all(r < 0.0 for r in residuals),
    )
