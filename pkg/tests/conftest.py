import math

import pytest
from mpmath import mp, mpf

from nlqed.quadrature import QuadratureConfig


@pytest.fixture(scope="session")
def tight_cfg():
    return QuadratureConfig(rel_tol=1e-13, abs_tol=1e-300)


def k1_integral_representation(x: float, dps: int = 25) -> float:
    """K1(x) = int_0^inf exp(-x cosh t) cosh t dt, evaluated with mpmath.

    The upper limit is cut where x cosh t > 800; the remainder is below
    exp(-800).
    """
    with mp.workdps(dps):
        top = mp.acosh(max(mpf(800) / x, 2))
        pts = [0, top / 4, top / 2, 3 * top / 4, top]
        return float(mp.quad(lambda t: mp.exp(-x * mp.cosh(t)) * mp.cosh(t), pts))


def rel_err(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b else abs(a)


__all__ = ["k1_integral_representation", "rel_err", "math"]
