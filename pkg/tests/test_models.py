"""Tests for the oscillator model registry: vector fields, analytic
Jacobians against finite differences, and parameter validation."""
import numpy as np
import pytest

from floqnet.exceptions import InvalidParam
from floqnet.models import get_model, linear_rotation_model, \
    repressilator_model, vdp_model
from floqnet.ode import integrate


def central_diff_jacobian(field, x, h=1e-6):
    dim = x.size
    jac = np.zeros((dim, dim))
    for j in range(dim):
        step = np.zeros(dim)
        step[j] = h * max(1.0, abs(x[j]))
        jac[:, j] = (field(x + step) - field(x - step)) / (2 * step[j])
    return jac


# Bounding boxes of the attractors, for the Jacobian consistency sweep.
_BOXES = {
    "vdp": (np.array([-2.5, -3.5]), np.array([2.5, 3.5])),
    "repressilator": (np.full(6, 0.5), np.full(6, 80.0)),
    "linear_rotation": (np.array([-1.5, -1.5]), np.array([1.5, 1.5])),
}


class TestVdp:
    def test_origin_is_equilibrium(self):
        assert np.array_equal(vdp_model(1.0).field(np.zeros(2)), np.zeros(2))

    def test_direct_substitution(self):
        assert np.allclose(vdp_model(1.0).field(np.array([1.0, 1.0])),
                           [1.0, -1.0])

    def test_jacobian_at_origin_unstable_focus(self):
        mu = 1.0
        jac = vdp_model(mu).jacobian(np.zeros(2))
        assert np.array_equal(jac, [[0.0, 1.0], [-1.0, mu]])
        eig = np.linalg.eigvals(jac)
        # (mu +/- sqrt(mu^2 - 4)) / 2: complex with positive real part
        assert np.allclose(sorted(eig.real), [mu / 2, mu / 2])
        assert np.allclose(sorted(eig.imag),
                           sorted([np.sqrt(4 - mu ** 2) / 2,
                                   -np.sqrt(4 - mu ** 2) / 2]))

    def test_invalid_mu(self):
        with pytest.raises(InvalidParam):
            vdp_model(0.0)
        with pytest.raises(InvalidParam):
            vdp_model(-1.0)

    def test_attractor_stays_in_box(self):
        model = vdp_model(1.0)
        traj = integrate(model.field, [2.0, 0.0], (0.0, 50.0))
        grid = np.linspace(5.0, 50.0, 2001)
        states = traj.eval(grid)
        assert np.abs(states[:, 0]).max() <= 3.0
        assert np.abs(states[:, 1]).max() <= 4.0


class TestRepressilator:
    def test_zero_state_mrna_rates(self):
        model = repressilator_model(alpha=1000.0, alpha0=1.0, n=2.0)
        rates = model.field(np.zeros(6))
        assert np.allclose(rates[[0, 2, 4]], 1001.0)

    def test_protein_rate_vanishes_when_tracking(self):
        model = repressilator_model(beta=5.0)
        x = np.array([2.0, 2.0, 7.0, 7.0, 0.4, 0.4])  # p_j == m_j
        rates = model.field(x)
        assert np.allclose(rates[[1, 3, 5]], 0.0)

    def test_symmetric_equilibrium(self):
        # bisection oracle on s*(1+s^2) = 1001 + s^2 gives s = 10.313585158
        s = 10.313585158377
        model = repressilator_model()
        rates = model.field(np.full(6, s))
        assert np.abs(rates).max() < 1e-8

    def test_state_ordering_puts_proteins_on_odd_slots(self):
        # mask [0,1,0,1,0,1] must select exactly the p states: perturbing
        # a protein changes only terms that depend on proteins
        model = repressilator_model()
        x = np.full(6, 5.0)
        bumped = x.copy()
        bumped[1] += 1.0  # p1
        delta = model.field(bumped) - model.field(x)
        # p1 feeds m2 (Hill) and its own relaxation
        assert delta[1] != 0.0 and delta[2] != 0.0
        assert np.allclose(delta[[0, 3, 4]], 0.0)

    def test_negative_concentration_clipped_with_warning(self):
        model = repressilator_model()
        x = np.zeros(6)
        x[5] = -1.0
        with pytest.warns(RuntimeWarning):
            rates = model.field(x)
        assert np.all(np.isfinite(rates))
        # clipped p3 = 0 gives full expression for m1
        assert rates[0] == pytest.approx(1001.0)

    def test_invalid_params(self):
        with pytest.raises(InvalidParam):
            repressilator_model(alpha=-1.0)
        with pytest.raises(InvalidParam):
            repressilator_model(beta=0.0)
        with pytest.raises(InvalidParam):
            repressilator_model(n=0.5)


class TestRotation:
    def test_field(self):
        assert np.array_equal(linear_rotation_model().field(
            np.array([1.0, 0.0])), [0.0, -1.0])

    def test_constant_jacobian(self):
        model = linear_rotation_model()
        expected = np.array([[0.0, 1.0], [-1.0, 0.0]])
        for x in (np.zeros(2), np.array([3.0, -2.0])):
            assert np.array_equal(model.jacobian(x), expected)


class TestJacobianConsistency:
    @pytest.mark.parametrize("name", ["vdp", "repressilator",
                                      "linear_rotation"])
    def test_matches_finite_differences(self, name):
        model = get_model(name)
        lo, hi = _BOXES[name]
        rng = np.random.default_rng(hash(name) % 2 ** 32)
        for _ in range(100):
            x = lo + (hi - lo) * rng.random(model.dim)
            analytic = model.jacobian(x)
            numeric = central_diff_jacobian(model.field, x)
            scale = max(np.abs(analytic).max(), 1.0)
            assert np.abs(analytic - numeric).max() < 1e-5 * scale


class TestRegistry:
    def test_lookup_and_params(self):
        model = get_model("vdp", {"mu": 2.5})
        assert model.params["mu"] == 2.5

    def test_unknown_name(self):
        with pytest.raises(InvalidParam, match="unknown model"):
            get_model("lorenz")

    def test_unknown_param(self):
        with pytest.raises(InvalidParam):
            get_model("vdp", {"sigma": 10.0})
