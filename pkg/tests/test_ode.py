"""Tests for the adaptive integrator, its dense output, and event location."""
import numpy as np
import pytest

from floqnet.exceptions import Blowup, OutOfRange, StepBudgetExceeded
from floqnet.ode import IntegratorConfig, integrate, integrate_with_events, \
    rk4_fixed


def harmonic(x):
    return np.array([x[1], -x[0]])


def vdp_field(x, mu=1.0):
    return np.array([x[1], mu * (1.0 - x[0] ** 2) * x[1] - x[0]])


class TestIntegrate:
    def test_zero_field_constant(self):
        traj = integrate(lambda x: np.zeros(2), [1.0, 2.0], (0.0, 5.0))
        assert np.abs(traj.states - np.array([1.0, 2.0])).max() < 1e-14

    def test_harmonic_period(self):
        traj = integrate(harmonic, [1.0, 0.0], (0.0, 2 * np.pi))
        assert np.abs(traj.states[-1] - np.array([1.0, 0.0])).max() < 1e-6

    def test_harmonic_energy_conserved(self):
        traj = integrate(harmonic, [1.0, 0.0], (0.0, 2 * np.pi))
        energy = traj.states[:, 0] ** 2 + traj.states[:, 1] ** 2
        assert np.abs(energy - 1.0).max() < 1e-6

    def test_vdp_bounded_with_reference_amplitude(self):
        traj = integrate(vdp_field, [2.0, 0.0], (0.0, 100.0))
        grid = np.linspace(60.0, 100.0, 4001)
        amp = np.abs(traj.eval(grid)[:, 0]).max()
        # reference run at rel_tol 1e-12 gives max|x1| = 2.008619861
        assert amp == pytest.approx(2.008619861, rel=0.02)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            IntegratorConfig(rel_tol=-1.0)
        with pytest.raises(ValueError):
            IntegratorConfig(max_steps=0)
        with pytest.raises(ValueError):
            integrate(harmonic, [1.0, 0.0], (1.0, 0.0))

    def test_step_budget(self):
        with pytest.raises(StepBudgetExceeded):
            integrate(vdp_field, [2.0, 0.0], (0.0, 100.0),
                      IntegratorConfig(max_steps=10))

    def test_blowup_detected(self):
        # x' = x^2 from x(0)=1 blows up at t=1
        with pytest.raises(Blowup) as info:
            integrate(lambda x: x ** 2, [1.0], (0.0, 2.0),
                      IntegratorConfig(max_step=0.2))
        assert info.value.t is not None and info.value.t <= 1.01


class TestDenseOutput:
    def test_node_times_exact(self):
        traj = integrate(harmonic, [1.0, 0.0], (0.0, 3.0))
        for k in (0, len(traj) // 2, len(traj) - 1):
            assert np.array_equal(traj.eval(traj.times[k]), traj.states[k])

    def test_constant_midpoint(self):
        traj = integrate(lambda x: np.zeros(1), [4.0], (0.0, 2.0))
        assert traj.eval(1.234567)[0] == pytest.approx(4.0, abs=1e-14)

    def test_harmonic_quarter_period(self):
        traj = integrate(harmonic, [1.0, 0.0], (0.0, 2 * np.pi))
        assert np.abs(traj.eval(np.pi / 2) - np.array([0.0, -1.0])).max() \
            < 1e-5

    def test_out_of_range(self):
        traj = integrate(harmonic, [1.0, 0.0], (0.0, 1.0))
        with pytest.raises(OutOfRange):
            traj.eval(1.5)

    def test_matches_restarted_integration(self):
        cfg = IntegratorConfig(rel_tol=1e-9, abs_tol=1e-11)
        traj = integrate(vdp_field, [2.0, 0.0], (0.0, 10.0), cfg)
        k = len(traj) // 2
        t_mid = 0.5 * (traj.times[k] + traj.times[k + 1])
        restart = integrate(vdp_field, traj.states[k],
                            (traj.times[k], traj.times[k] + 1.0), cfg)
        err = np.abs(traj.eval(t_mid) - restart.eval(t_mid)).max()
        scale = np.abs(traj.eval(t_mid)).max()
        assert err < 10 * (cfg.abs_tol + cfg.rel_tol * scale) * len(traj)

    def test_tolerance_monotonicity(self):
        ref = integrate(vdp_field, [2.0, 0.0], (0.0, 20.0),
                        IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14))
        final_ref = ref.states[-1]
        errors = []
        for rtol in (1e-5, 1e-6, 1e-7, 1e-8, 1e-9):
            traj = integrate(vdp_field, [2.0, 0.0], (0.0, 20.0),
                             IntegratorConfig(rel_tol=rtol,
                                              abs_tol=rtol * 1e-2))
            errors.append(np.abs(traj.states[-1] - final_ref).max())
        assert all(b <= a * 1.0001 + 1e-15
                   for a, b in zip(errors, errors[1:]))


class TestEvents:
    def test_harmonic_upward_crossings(self):
        # x2(t) = -sin t crosses zero upward at t = pi, 3*pi
        _, crossings = integrate_with_events(
            harmonic, [1.0, 0.0], (0.0, 4 * np.pi), event=lambda x: x[1]
        )
        times = [t for t, _ in crossings]
        assert len(times) == 2
        assert abs(times[0] - np.pi) < 1e-8
        assert abs(times[1] - 3 * np.pi) < 1e-8

    def test_event_state_at_crossing(self):
        _, crossings = integrate_with_events(
            harmonic, [1.0, 0.0], (0.0, 4 * np.pi), event=lambda x: x[1]
        )
        _, state = crossings[0]
        assert np.abs(state - np.array([-1.0, 0.0])).max() < 1e-8

    def test_no_crossing_empty(self):
        _, crossings = integrate_with_events(
            harmonic, [1.0, 0.0], (0.0, 10.0), event=lambda x: x[0] + 5.0
        )
        assert crossings == []

    def test_crossings_bracketed_by_sign_change(self):
        traj, crossings = integrate_with_events(
            vdp_field, [2.0, 0.0], (0.0, 30.0), event=lambda x: x[1]
        )
        g = traj.states[:, 1]
        for tc, _ in crossings:
            idx = np.searchsorted(traj.times, tc)
            assert traj.times[idx - 1] <= tc <= traj.times[idx]
            assert g[idx - 1] < 0.0 <= g[idx]

    def test_vdp_gaps_converge_to_period(self):
        traj = integrate(vdp_field, [2.0, 0.0], (0.0, 60.0))
        _, crossings = integrate_with_events(
            vdp_field, traj.states[-1], (0.0, 40.0), event=lambda x: x[1]
        )
        gaps = np.diff([t for t, _ in crossings])
        # reference period oracle (rel_tol 1e-12 Poincare returns)
        assert gaps[-1] == pytest.approx(6.663286859322, rel=1e-6)

    def test_requires_event(self):
        with pytest.raises(ValueError):
            integrate_with_events(harmonic, [1.0, 0.0], (0.0, 1.0))


class TestRK4Fixed:
    def test_cross_checks_adaptive(self):
        times, states = rk4_fixed(harmonic, [1.0, 0.0], (0.0, 2 * np.pi),
                                  2000)
        assert times.size == 2001
        assert np.abs(states[-1] - np.array([1.0, 0.0])).max() < 1e-6

    def test_agrees_with_adaptive_on_vdp(self):
        adaptive = integrate(vdp_field, [2.0, 0.0], (0.0, 10.0))
        _, states = rk4_fixed(vdp_field, [2.0, 0.0], (0.0, 10.0), 20000)
        assert np.abs(adaptive.states[-1] - states[-1]).max() < 1e-6
