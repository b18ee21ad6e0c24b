import math
import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlqed.quadrature import (
    QuadratureConfig,
    integrate_finite,
    integrate_semi_infinite,
    scan_sign_changes,
)
from nlqed.specfun import bessel_k1


def test_polynomials_exact():
    assert abs(integrate_finite(lambda z: z, 0.0, 1.0).value - 0.5) <= 1e-14
    assert abs(integrate_finite(lambda z: 1.0 + z, 0.0, 1.0).value - 1.5) <= 1e-14


def test_log_endpoint_singularity():
    r = integrate_finite(math.log, 0.0, 1.0)
    assert r.converged
    # antiderivative z ln z - z
    assert abs(r.value - (-1.0)) <= 1e-10


def test_converged_implies_error_within_tolerance():
    cfg = QuadratureConfig(rel_tol=1e-9, abs_tol=1e-14)
    r = integrate_finite(lambda z: math.sqrt(z) * math.cos(20 * z), 0.0, 3.0, cfg)
    assert r.converged
    assert 0.0 <= r.error_estimate <= max(cfg.abs_tol, cfg.rel_tol * abs(r.value))


def test_budget_exhaustion_is_flagged():
    cfg = QuadratureConfig(max_evaluations=300)
    r = integrate_finite(lambda z: z ** -0.99, 0.0, 1.0, cfg)
    assert not r.converged
    assert r.evaluations <= 300
    assert math.isfinite(r.value)


def test_reversed_limits_rejected():
    with pytest.raises(ValueError):
        integrate_finite(lambda z: z, 1.0, 0.0)


def test_empty_interval():
    r = integrate_finite(lambda z: 1.0 / 0.0, 2.0, 2.0)
    assert r.value == 0.0 and r.converged


@pytest.mark.parametrize("kwargs", [dict(rel_tol=0.0), dict(abs_tol=-1.0), dict(max_evaluations=10)])
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        QuadratureConfig(**kwargs)


def test_semi_infinite_exponential():
    assert abs(integrate_semi_infinite(lambda x: math.exp(-x), 0.0).value - 1.0) <= 1e-12


def test_bessel_moments():
    first = integrate_semi_infinite(lambda u: u * bessel_k1(u), 0.0)
    second = integrate_semi_infinite(lambda u: u * u * bessel_k1(u), 0.0)
    assert abs(first.value - math.pi / 2) <= 1e-9
    assert abs(second.value - 2.0) <= 1e-9


def test_semi_infinite_algebraic_tail():
    for w in (0.1, 1.0, 3.0):
        r = integrate_semi_infinite(lambda s: s / (s + w) ** 3, 0.0)
        assert abs(r.value * 2.0 * w - 1.0) <= 1e-9


def _f(z):
    return math.exp(-z) * math.sin(4.0 * z) + math.sqrt(z)


def _g(z):
    return z * z * math.log1p(z) - 1.0 / (1.0 + z * z)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 2.99))
def test_interval_additivity(c):
    whole = integrate_finite(_f, 0.0, 3.0)
    left = integrate_finite(_f, 0.0, c)
    right = integrate_finite(_f, c, 3.0)
    bound = 3.0 * (whole.error_estimate + left.error_estimate + right.error_estimate)
    assert abs(whole.value - left.value - right.value) <= bound


@settings(max_examples=40, deadline=None)
@given(st.floats(-5, 5), st.floats(-5, 5))
def test_linearity(alpha, beta):
    mixed = integrate_finite(lambda z: alpha * _f(z) + beta * _g(z), 0.0, 3.0)
    fi = integrate_finite(_f, 0.0, 3.0)
    gi = integrate_finite(_g, 0.0, 3.0)
    tol = mixed.error_estimate + abs(alpha) * fi.error_estimate + abs(beta) * gi.error_estimate
    assert abs(mixed.value - (alpha * fi.value + beta * gi.value)) <= tol + 1e-15


def test_deterministic_across_threads():
    f = lambda u: u * bessel_k1(u)  # noqa: E731
    ref = integrate_semi_infinite(f, 0.0)
    out = [None] * 8

    def work(i):
        out[i] = integrate_semi_infinite(f, 0.0)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == ref for r in out)
    assert all(r.value.hex() == ref.value.hex() for r in out)


class TestSignScan:
    def test_single_root(self):
        brackets = scan_sign_changes(lambda x: x * x - 1.0, 0.0, 2.0, 201)
        assert len(brackets) == 1
        lo, hi = brackets[0]
        assert lo <= 1.0 <= hi

    def test_root_between_grid_points(self):
        brackets = scan_sign_changes(lambda x: x * x - 2.0, 0.0, 2.0, 10)
        assert len(brackets) == 1
        lo, hi = brackets[0]
        assert lo < math.sqrt(2.0) < hi

    def test_no_root(self):
        assert scan_sign_changes(lambda x: 1.0, 0.0, 1.0, 11) == []

    def test_many_roots(self):
        assert len(scan_sign_changes(math.sin, 0.5, 10.0, 1000)) == 3

    @pytest.mark.parametrize("args", [(1.0, 0.0, 10), (0.0, 0.0, 10), (0.0, 1.0, 1)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            scan_sign_changes(lambda x: x, *args)
