"""Tests for limit-cycle location: periods against independent reference
oracles, closure quality, interpolation defect scaling, and the failure
taxonomy."""
import numpy as np
import pytest

from floqnet.exceptions import FixedPointConvergence, NoCrossings, \
    NotPeriodic
from floqnet.limit_cycle import find_limit_cycle, resample
from floqnet.models import OscillatorModel, vdp_model
from floqnet.ode import IntegratorConfig, integrate

# Reference oracle values (rel_tol 1e-12 integration, 5 averaged Poincare
# returns after a 100-time-unit transient; gap spread 7e-13).
VDP_PERIOD_REF = 6.663286859322
REP_PERIOD_REF = 7.992040324229  # regression baseline, same oracle


class TestRotationCycle:
    def test_period_is_two_pi(self, rotation_cycle):
        assert rotation_cycle.period == pytest.approx(2 * np.pi, abs=1e-8)

    def test_samples_on_unit_circle(self, rotation_cycle):
        radii = np.linalg.norm(rotation_cycle.samples, axis=1)
        assert np.abs(radii - 1.0).max() < 1e-6


class TestVdpCycle:
    def test_period_against_reference(self, vdp_cycle):
        assert vdp_cycle.period == pytest.approx(VDP_PERIOD_REF, rel=1e-3)
        # the finder does far better than the acceptance bound
        assert vdp_cycle.period == pytest.approx(VDP_PERIOD_REF, rel=1e-8)

    def test_closure(self, vdp_cycle):
        assert vdp_cycle.closure_residual < 1e-6

    def test_reintegration_returns_to_anchor(self, vdp, vdp_cycle):
        traj = integrate(vdp.field, vdp_cycle.anchor,
                         (0.0, vdp_cycle.period))
        drift = np.linalg.norm(traj.states[-1] - vdp_cycle.anchor) \
            / np.linalg.norm(vdp_cycle.anchor)
        assert drift < 1e-6

    def test_period_independent_of_initial_condition(self, vdp, vdp_cycle):
        other = find_limit_cycle(vdp, x0=[0.1, -1.7])
        assert other.period == pytest.approx(vdp_cycle.period, rel=1e-6)

    def test_period_independent_of_anchor_phase(self, vdp, vdp_cycle):
        # start from a mid-cycle state: different section point, same orbit
        x_mid = vdp_cycle.eval(vdp_cycle.period / 3.0)
        rebuilt = find_limit_cycle(vdp, x0=x_mid)
        assert rebuilt.period == pytest.approx(vdp_cycle.period, rel=1e-8)


class TestRepressilatorCycle:
    def test_period_and_closure(self, rep_cycle):
        assert rep_cycle.closure_residual < 1e-6
        assert rep_cycle.period == pytest.approx(REP_PERIOD_REF, rel=1e-6)


class TestEvalAndResample:
    def test_eval_wraps_periodically(self, vdp_cycle):
        t = 1.234
        a = vdp_cycle.eval(t)
        b = vdp_cycle.eval(t + 3 * vdp_cycle.period)
        assert np.abs(a - b).max() < 1e-12

    def test_resample_same_count_identity(self, vdp_cycle):
        again = resample(vdp_cycle, vdp_cycle.n_samples)
        assert np.abs(again.samples - vdp_cycle.samples).max() < 1e-9
        assert again.period == vdp_cycle.period

    def test_resample_rotation_unit_circle(self, rotation_cycle):
        dense = resample(rotation_cycle, 1024)
        radii = np.linalg.norm(dense.samples, axis=1)
        assert np.abs(radii - 1.0).max() < 1e-6

    def test_doubling_count_at_least_halves_defect(self, vdp, vdp_cycle):
        # defect against direct integration from the anchor
        ref = integrate(vdp.field, vdp_cycle.anchor,
                        (0.0, vdp_cycle.period),
                        IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14))
        probe = np.linspace(0.0, vdp_cycle.period, 701)[:-1]
        exact = ref.eval(probe)

        def defect(count):
            coarse = resample(vdp_cycle, count)
            return np.abs(coarse.eval(probe) - exact).max()

        d64, d128 = defect(64), defect(128)
        assert d128 <= d64 / 2  # cubic Hermite: ~16x per doubling

    def test_resample_count_floor(self, vdp_cycle):
        with pytest.raises(ValueError):
            resample(vdp_cycle, 32)


class TestFailureModes:
    def test_fixed_point_convergence(self):
        # damped rotation spirals onto the origin
        def field(x):
            return np.array([x[1] - 0.5 * x[0], -x[0] - 0.5 * x[1]])

        def jac(x):
            return np.array([[-0.5, 1.0], [-1.0, -0.5]])

        damped = OscillatorModel(
            name="damped", dim=2, params={}, field=field, jacobian=jac,
            default_initial=np.array([1.0, 0.0]), transient_hint=60.0,
        )
        with pytest.raises(FixedPointConvergence):
            find_limit_cycle(damped)

    def test_no_crossings_for_monotone_drift(self):
        # x1 strictly decreasing: the section is never crossed upward
        drift = OscillatorModel(
            name="drift", dim=2, params={},
            field=lambda x: np.array([-1.0, 0.0]),
            jacobian=lambda x: np.zeros((2, 2)),
            default_initial=np.array([0.0, 0.0]), transient_hint=0.0,
        )
        with pytest.raises(NoCrossings):
            find_limit_cycle(drift)

    def test_not_periodic_for_single_crossing(self):
        # x1 strictly increasing: exactly one upward crossing, no return
        drift = OscillatorModel(
            name="drift_up", dim=2, params={},
            field=lambda x: np.array([1.0, 0.0]),
            jacobian=lambda x: np.zeros((2, 2)),
            default_initial=np.array([0.0, 0.0]), transient_hint=0.0,
        )
        with pytest.raises(NotPeriodic):
            find_limit_cycle(drift)

    def test_vdp_mu_parameter_changes_period(self):
        slow = find_limit_cycle(vdp_model(2.0))
        assert slow.period > VDP_PERIOD_REF  # stronger damping, longer period
