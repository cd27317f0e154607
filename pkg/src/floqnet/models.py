"""Oscillator model registry.

Each model bundles a named autonomous vector field with its analytic
Jacobian, default parameters, a sensible initial condition, and a hint for
how long the transient onto the attractor takes.  Models are immutable and
safe to share between threads.

Registered models:

``vdp``
    Van der Pol oscillator, x1' = x2, x2' = mu*(1 - x1^2)*x2 - x1.
``repressilator``
    Three-gene cyclic repression circuit, six states ordered
    (m1, p1, m2, p2, m3, p3) so that a 0/1 diagonal coupling mask
    [0,1,0,1,0,1] selects exactly the protein states.
``linear_rotation``
    Harmonic rotation x1' = x2, x2' = -x1; period 2*pi, analytic
    solutions.  A test fixture, not a self-sustained oscillator.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import InvalidParam

__all__ = [
    "OscillatorModel",
    "vdp_model",
    "repressilator_model",
    "linear_rotation_model",
    "get_model",
    "MODEL_NAMES",
]


@dataclass(frozen=True)
class OscillatorModel:
    """A named vector field f: R^m -> R^m with analytic Jacobian."""

    name: str
    dim: int
    params: dict
    field: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]
    default_initial: np.ndarray
    transient_hint: float = 50.0

    def __post_init__(self):
        x0 = np.asarray(self.default_initial, dtype=float)
        if x0.shape != (self.dim,):
            raise InvalidParam(
                f"default_initial must have shape ({self.dim},), got {x0.shape}"
            )
        object.__setattr__(self, "default_initial", x0)


def vdp_model(mu: float = 1.0) -> OscillatorModel:
    """Van der Pol oscillator with damping parameter ``mu > 0``."""
    if not mu > 0:
        raise InvalidParam(f"vdp requires mu > 0, got {mu}")
    mu = float(mu)

    def f(x):
        return np.array([x[1], mu * (1.0 - x[0] ** 2) * x[1] - x[0]])

    def jac(x):
        return np.array([
            [0.0, 1.0],
            [-2.0 * mu * x[0] * x[1] - 1.0, mu * (1.0 - x[0] ** 2)],
        ])

    return OscillatorModel(
        name="vdp", dim=2, params={"mu": mu}, field=f, jacobian=jac,
        default_initial=np.array([2.0, 0.0]), transient_hint=50.0,
    )


def _hill(p, alpha, n):
    """alpha / (1 + p^n) with p clipped to zero from below.

    Negative concentrations only ever arise as numerical artifacts (e.g.
    transients in coupled networks); they are clipped with a warning so
    fractional Hill exponents stay real-valued.
    """
    if p < 0.0:
        warnings.warn("negative concentration clipped to 0 in Hill term",
                      RuntimeWarning, stacklevel=2)
        p = 0.0
    return alpha / (1.0 + p ** n)


def repressilator_model(alpha: float = 1000.0, alpha0: float = 1.0,
                        beta: float = 5.0, n: float = 2.0) -> OscillatorModel:
    """Three-gene repressilator.

    State order (m1, p1, m2, p2, m3, p3):

        dm_j/dt = -m_j + alpha / (1 + p_{j-1}^n) + alpha0
        dp_j/dt = -beta * (p_j - m_j),        j = 1, 2, 3,  p_0 == p_3

    The Hill exponent ``n`` may be any real >= 1.
    """
    if not alpha > 0:
        raise InvalidParam(f"repressilator requires alpha > 0, got {alpha}")
    if not beta > 0:
        raise InvalidParam(f"repressilator requires beta > 0, got {beta}")
    if not n >= 1:
        raise InvalidParam(f"repressilator requires n >= 1, got {n}")
    alpha, alpha0, beta, n = float(alpha), float(alpha0), float(beta), float(n)

    # indices: m_j at 2j, p_j at 2j+1; repressor of gene j is p_{j-1}
    rep_idx = (5, 1, 3)

    def f(x):
        out = np.empty(6)
        for j in range(3):
            m, p = x[2 * j], x[2 * j + 1]
            out[2 * j] = -m + _hill(x[rep_idx[j]], alpha, n) + alpha0
            out[2 * j + 1] = -beta * (p - m)
        return out

    def jac(x):
        J = np.zeros((6, 6))
        for j in range(3):
            p_rep = max(x[rep_idx[j]], 0.0)
            J[2 * j, 2 * j] = -1.0
            # d/dp of alpha/(1+p^n) = -alpha*n*p^(n-1) / (1+p^n)^2
            J[2 * j, rep_idx[j]] = (
                -alpha * n * p_rep ** (n - 1.0) / (1.0 + p_rep ** n) ** 2
            )
            J[2 * j + 1, 2 * j] = beta
            J[2 * j + 1, 2 * j + 1] = -beta
        return J

    return OscillatorModel(
        name="repressilator", dim=6,
        params={"alpha": alpha, "alpha0": alpha0, "beta": beta, "n": n},
        field=f, jacobian=jac,
        default_initial=np.array([0.0, 1.0, 0.0, 3.0, 0.0, 5.0]),
        transient_hint=30.0,
    )


def linear_rotation_model() -> OscillatorModel:
    """Harmonic rotation: every circle is a period-2*pi orbit and the
    one-period state transition matrix is the identity."""

    def f(x):
        return np.array([x[1], -x[0]])

    jac_const = np.array([[0.0, 1.0], [-1.0, 0.0]])

    def jac(x):
        return jac_const.copy()

    return OscillatorModel(
        name="linear_rotation", dim=2, params={}, field=f, jacobian=jac,
        default_initial=np.array([1.0, 0.0]), transient_hint=0.0,
    )


_BUILDERS = {
    "vdp": vdp_model,
    "repressilator": repressilator_model,
    "linear_rotation": linear_rotation_model,
}

MODEL_NAMES = tuple(sorted(_BUILDERS))


def get_model(name: str, params: dict | None = None) -> OscillatorModel:
    """Build a registered model by name with parameter overrides."""
    if name not in _BUILDERS:
        raise InvalidParam(
            f"unknown model {name!r}; known models: {', '.join(MODEL_NAMES)}"
        )
    try:
        return _BUILDERS[name](**(params or {}))
    except TypeError as exc:
        raise InvalidParam(f"bad parameters for model {name!r}: {exc}") from exc
