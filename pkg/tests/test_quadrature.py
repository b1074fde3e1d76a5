import math

import numpy as np
import pytest

from gqld.quadrature import (
    _GK15,
    QuadratureResult,
    grid_convexity,
    grid_monotone,
    integrate_halfline,
    integrate_line,
    moment,
)

SQRT_2PI = math.sqrt(2.0 * math.pi)


def normal_pdf(y):
    return math.exp(-0.5 * y * y) / SQRT_2PI


class TestNodesAndWeights:
    def test_kronrod_weights_sum_to_two(self):
        assert sum(wk for _, _, wk in _GK15) == pytest.approx(2.0, abs=1e-14)

    def test_gauss_weights_sum_to_two(self):
        assert sum(wg for _, wg, _ in _GK15) == pytest.approx(2.0, abs=1e-14)

    def test_nodes_symmetric(self):
        nodes = sorted(node for node, _, _ in _GK15)
        assert np.allclose(nodes, [-n for n in reversed(nodes)], atol=1e-15)


class TestIntegrateLine:
    def test_normal_mass(self):
        res = integrate_line(normal_pdf, tol=1e-10)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_odd_function_is_zero(self):
        res = integrate_line(lambda y: y * math.exp(-y * y), tol=1e-12)
        assert abs(res.value) <= 1e-12

    def test_constant_zero_exact(self):
        res = integrate_line(lambda y: 0.0, tol=1e-12)
        assert res.value == 0.0
        assert res.error_estimate == 0.0

    def test_shifted_narrow_gaussian(self):
        res = integrate_line(lambda y: normal_pdf((y - 6.0) / 0.5) / 0.5, tol=1e-10)
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_reports_evaluations(self):
        res = integrate_line(normal_pdf, tol=1e-10)
        assert res.evaluations >= 15 * 32

    def test_nonconvergence_flagged(self):
        # panel budget too small for an oscillatory integrand at tight tol
        res = integrate_line(lambda y: math.cos(40.0 * y) * math.exp(-0.01 * y * y),
                             tol=1e-14, max_panels=40)
        assert not res.converged

    def test_nonfinite_integrand_rejected(self):
        with pytest.raises(ValueError):
            integrate_line(lambda y: math.inf, tol=1e-8)


class TestIntegrateHalfline:
    def test_exponential_mass(self):
        res = integrate_halfline(lambda x: math.exp(-x), tol=1e-10)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_rate_three_exponential(self):
        res = integrate_halfline(lambda x: 3.0 * math.exp(-3.0 * x), tol=1e-10)
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_gamma_second_moment(self):
        # int_0^inf x^2 3 e^(-3x) dx = 2/27 * 3 = 2/9
        res = integrate_halfline(lambda x: x * x * 3.0 * math.exp(-3.0 * x), tol=1e-11)
        assert res.value == pytest.approx(2.0 / 9.0, rel=1e-9)

    def test_scale_kwarg(self):
        res = integrate_halfline(lambda x: 0.05 * math.exp(-0.05 * x), tol=1e-10,
                                 scale=20.0)
        assert res.value == pytest.approx(1.0, abs=1e-10)


class TestMoment:
    def test_normal_moments(self):
        assert moment(normal_pdf, 1, tol=1e-11).value == pytest.approx(0.0, abs=1e-11)
        assert moment(normal_pdf, 2, tol=1e-11).value == pytest.approx(1.0, abs=1e-9)
        assert moment(normal_pdf, 4, tol=1e-11).value == pytest.approx(3.0, rel=1e-8)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            moment(normal_pdf, -1)


# ten closed-form integrals: estimates must never understate the true error
# by more than 3x
_HONESTY_CASES = [
    (lambda: integrate_line(normal_pdf, 1e-10), 1.0),
    (lambda: integrate_line(lambda y: y * y * normal_pdf(y), 1e-10), 1.0),
    (lambda: integrate_line(lambda y: 0.5 * math.exp(-abs(y)), 1e-9), 1.0),
    (lambda: integrate_line(lambda y: 0.25 / math.cosh(0.5 * y) ** 2, 1e-10), 1.0),
    (lambda: integrate_line(lambda y: math.cos(y) * normal_pdf(y), 1e-10),
     math.exp(-0.5)),
    (lambda: integrate_halfline(lambda x: math.exp(-x), 1e-10), 1.0),
    (lambda: integrate_halfline(lambda x: x * math.exp(-x), 1e-10), 1.0),
    (lambda: integrate_halfline(lambda x: x * x * 3 * math.exp(-3 * x), 1e-10),
     2.0 / 9.0),
    (lambda: integrate_halfline(lambda x: math.exp(-x) * math.cos(5.0 * x), 1e-10),
     1.0 / 26.0),
    (lambda: integrate_line(lambda y: math.exp(y) / (1.0 + math.exp(y)) ** 2
                            if y < 500 else 0.0, 1e-9), 1.0),
]


@pytest.mark.parametrize("case_idx", range(len(_HONESTY_CASES)))
def test_error_estimates_are_honest(case_idx):
    runner, exact = _HONESTY_CASES[case_idx]
    res = runner()
    assert res.converged
    true_err = abs(res.value - exact)
    assert true_err <= max(3.0 * res.error_estimate, 1e-14)


class TestGridChecks:
    def test_parabola_is_convex(self):
        rep = grid_convexity(lambda t: t * t, -3.0, 3.0, 500)
        assert rep.passed

    def test_sine_fails_convexity_with_location(self):
        rep = grid_convexity(math.sin, 0.0, 2.0 * math.pi, 500)
        assert not rep.passed
        assert "worst at x=" in rep.detail
        # worst violation of convexity for sin sits where sin'' = -sin is most
        # negative, i.e. near pi/2
        loc = float(rep.detail.split("x=")[1])
        assert loc == pytest.approx(math.pi / 2.0, abs=0.1)

    def test_increasing_line_passes_monotone(self):
        rep = grid_monotone(lambda t: 2.0 * t + 1.0, 0.0, 5.0, 200)
        assert rep.passed

    def test_decreasing_fails_monotone(self):
        rep = grid_monotone(lambda t: -t, 0.0, 5.0, 200)
        assert not rep.passed

    def test_report_invariant(self):
        rep = grid_convexity(lambda t: t * t, -1.0, 1.0, 100)
        assert rep.passed == (rep.statistic <= rep.threshold)

    def test_small_grid_rejected(self):
        with pytest.raises(ValueError):
            grid_monotone(lambda t: t, 0.0, 1.0, 50)
