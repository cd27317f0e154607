"""Monodromy matrices, Floquet multipliers and exponents, determinant
identities, the full-state multiplier shift law, and the Lyapunov-Floquet
factorization.

The variational equation is integrated jointly with the cycle state (an
augmented m + m^2 system), so no interpolation of the reference orbit
enters the multiplier error budget.  The one-period transition matrix is
accumulated in segments::

    phi(T, 0) = A_p @ ... @ A_1,        A_i = phi(t_i, t_{i-1})

and the multipliers are taken from the block-cyclic lift of the factor
sequence: the eigenvalues of the pm x pm matrix with A_i on its cyclic
block subdiagonal are the p-th roots of the eigenvalues of the product.
Each factor is well conditioned even when the full product is not, so
multipliers far below the eigenvalue noise floor of the assembled product
(strongly contracting cycles push them past 1e-16) are still recovered
with full relative accuracy.  The determinant of phi is accumulated the
same way, as the product of the factor determinants.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .exceptions import ClosureDrift
from .limit_cycle import LimitCycle
from .models import OscillatorModel
from .ode import IntegratorConfig, integrate

__all__ = [
    "Monodromy",
    "LFDecomposition",
    "monodromy",
    "shifted_multipliers_fullstate",
    "ajl_determinant",
    "lf_decomposition",
]

# Tolerance for identifying the unity multiplier of an uncoupled cycle.
UNITY_TOL = 1e-3

# Relative drift of the cycle state allowed over one variational period.
_CLOSURE_DRIFT_TOL = 1e-4


def _resolve_mask(mask, dim):
    if mask is None:
        return np.ones(dim)
    m = np.asarray(mask, dtype=float).ravel()
    if m.shape != (dim,):
        raise ValueError(f"mask must have length {dim}, got {m.shape}")
    if not np.all((m == 0.0) | (m == 1.0)):
        raise ValueError("mask entries must be 0 or 1")
    return m


def _n_segments(dim, segments=None):
    # Keep the cyclic lift within the 64x64 eigenvalue budget.
    p = min(16, 64 // dim) if segments is None else int(segments)
    return max(1, min(p, 64 // dim))


@dataclass(frozen=True)
class Monodromy:
    """One-period state transition matrix of the variational system
    zeta' = [Df(x_s(t)) - kappa * DH] zeta along a limit cycle.

    ``matrix`` is the assembled product of the segment factors; for
    strongly contracting cycles its smallest eigenvalues fall below the
    double-precision noise floor, so ``multipliers`` and ``det`` are
    computed from the factored form instead and remain accurate.
    """

    matrix: np.ndarray
    multipliers: np.ndarray
    exponents: np.ndarray
    kappa: float
    mask: np.ndarray
    period: float
    det: float

    @property
    def dim(self):
        return self.matrix.shape[0]

    def unity_index(self):
        """Index of the multiplier closest to 1, or None if none is within
        the unity tolerance."""
        d = np.abs(self.multipliers - 1.0)
        i = int(np.argmin(d))
        return i if d[i] < UNITY_TOL else None


@dataclass(frozen=True)
class LFDecomposition:
    """Lyapunov-Floquet factorization of the uncoupled variational flow:
    constant matrix R with expm(R*T) = phi(T,0) and periodic coordinate
    change P(t) = expm(R*t) @ inv(phi(t,0)), sampled at the cycle phases.

    ``P_samples[0]`` is the identity exactly; ``periodicity_residual`` is
    ||P(T) - P(0)||_F / ||P(0)||_F.
    """

    R: np.ndarray
    times: np.ndarray
    P_samples: np.ndarray
    periodicity_residual: float
    period: float


def _segment_factors(model, lc, kappa, mask, cfg, segments):
    """Integrate the augmented (cycle + variational) system over one period
    in ``segments`` legs, restarting the variational factor at the identity
    each leg.  Returns (factors, cycle drift)."""
    m = model.dim
    f, jac = model.field, model.jacobian
    dh = mask  # diagonal of DH; constant along the cycle (linear coupling)

    def aug(z):
        x = z[:m]
        y = z[m:].reshape(m, m)
        a = jac(x)
        if kappa != 0.0:
            a = a - np.diag(kappa * dh)
        return np.concatenate([f(x), (a @ y).ravel()])

    bounds = np.linspace(0.0, lc.period, segments + 1)
    eye_flat = np.eye(m).ravel()
    x = lc.anchor.copy()
    factors = []
    for i in range(segments):
        z0 = np.concatenate([x, eye_flat])
        traj = integrate(aug, z0, (0.0, bounds[i + 1] - bounds[i]), cfg)
        z_end = traj.states[-1]
        x = z_end[:m]
        factors.append(z_end[m:].reshape(m, m))
    drift = float(np.linalg.norm(x - lc.anchor) / np.linalg.norm(lc.anchor))
    return factors, drift


def _cyclic_multipliers(factors):
    """Eigenvalues of factors[p-1] @ ... @ factors[0] via the block-cyclic
    lift, clustered back from their p-th roots."""
    p = len(factors)
    m = factors[0].shape[0]
    if p == 1:
        return linalg.eigenvalues(factors[0])
    c = np.zeros((m * p, m * p))
    c[:m, -m:] = factors[-1]
    for i in range(p - 1):
        c[m * (i + 1): m * (i + 2), m * i: m * (i + 1)] = factors[i]
    powered = np.linalg.eigvals(c) ** p
    # Greedy proximity clustering into m groups of p; the p roots of one
    # product eigenvalue power back to near-coincident values.
    used = np.zeros(powered.size, dtype=bool)
    means = np.empty(m, dtype=complex)
    order = np.argsort(-np.abs(powered))
    k = 0
    for idx in order:
        if used[idx]:
            continue
        dist = np.abs(powered - powered[idx])
        dist[used] = np.inf
        dist[idx] = 0.0
        group = np.argsort(dist)[:p]
        used[group] = True
        means[k] = powered[group].mean()
        k += 1
    return linalg.sort_spectrum(means)


def monodromy(model: OscillatorModel, lc: LimitCycle, kappa: float = 0.0,
              mask=None, cfg: IntegratorConfig | None = None,
              segments: int | None = None) -> Monodromy:
    """Monodromy of the variational system [Df(x_s) - kappa*DH] along the
    cycle, from the identity, over exactly one period.

    ``kappa`` is the effective coupling K*lambda of an eigenmode; it may be
    negative (used by instability studies).  ``mask`` is the diagonal of
    DH as a 0/1 vector; None means full-state coupling (identity).

    Raises :class:`ClosureDrift` if the cycle state fails to return to the
    anchor within 1e-4 relative.
    """
    cfg = cfg or IntegratorConfig()
    mask_v = _resolve_mask(mask, model.dim)
    p = _n_segments(model.dim, segments)
    factors, drift = _segment_factors(model, lc, float(kappa), mask_v, cfg, p)
    if drift > _CLOSURE_DRIFT_TOL:
        raise ClosureDrift(
            f"cycle state drifted {drift:.3g} (relative) over one period; "
            "limit cycle and model are inconsistent"
        )
    phi = factors[0]
    for a in factors[1:]:
        phi = a @ phi
    dets = [linalg.determinant(a) for a in factors]
    det_phi = float(np.prod(dets).real) if not np.iscomplexobj(phi) \
        else complex(np.prod(dets))
    multipliers = _cyclic_multipliers(factors)
    with np.errstate(divide="ignore"):
        exponents = np.log(multipliers.astype(complex)) / lc.period
    return Monodromy(
        matrix=phi, multipliers=multipliers, exponents=exponents,
        kappa=float(kappa), mask=mask_v, period=lc.period, det=det_phi,
    )


def shifted_multipliers_fullstate(base: Monodromy, kappa: float,
                                  period: float | None = None) -> np.ndarray:
    """Full-state (DH = I) multipliers at effective coupling ``kappa``,
    predicted from an uncoupled monodromy: every multiplier scales by
    exp(-kappa*T).

    This is the closed-form side of the shift law; the direct variational
    integration at ``kappa`` is the independent route it is checked
    against.
    """
    if base.kappa != 0.0:
        raise ValueError("shift law requires a base monodromy at kappa=0")
    t = base.period if period is None else float(period)
    return base.multipliers * np.exp(-float(kappa) * t)


def ajl_determinant(model: OscillatorModel, lc: LimitCycle,
                    kappa: float = 0.0, mask=None, t: float | None = None,
                    cfg: IntegratorConfig | None = None,
                    segments: int | None = None):
    """Both sides of the transition-matrix determinant identity at time
    ``t`` in [0, T]:

        det phi(t, 0)  vs  exp(int_0^t tr Df(x_s(tau)) dtau)
                             * exp(-kappa * tr(DH) * t)

    The left side is the determinant of the integrated variational matrix
    (accumulated as a product of segment determinants); the right side
    integrates the scalar Jacobian trace along the cycle.  Returns
    ``(det_phi, rhs)``; agreement is the caller's assertion.
    """
    cfg = cfg or IntegratorConfig()
    mask_v = _resolve_mask(mask, model.dim)
    t_end = lc.period if t is None else float(t)
    if not 0.0 <= t_end <= lc.period * (1 + 1e-12):
        raise ValueError(f"t must lie in [0, T], got {t_end}")
    if t_end == 0.0:
        return 1.0, 1.0

    m = model.dim
    f, jac = model.field, model.jacobian
    kap = float(kappa)
    p_full = _n_segments(m, segments)
    p = max(1, int(np.ceil(p_full * t_end / lc.period)))
    bounds = np.linspace(0.0, t_end, p + 1)

    def aug(z):
        x = z[:m]
        y = z[m: m + m * m].reshape(m, m)
        a = jac(x)
        trace = np.trace(a)
        if kap != 0.0:
            a = a - np.diag(kap * mask_v)
        return np.concatenate([f(x), (a @ y).ravel(), [trace]])

    eye_flat = np.eye(m).ravel()
    x = lc.anchor.copy()
    det_phi = 1.0
    trace_integral = 0.0
    for i in range(p):
        z0 = np.concatenate([x, eye_flat, [0.0]])
        traj = integrate(aug, z0, (0.0, bounds[i + 1] - bounds[i]), cfg)
        z_end = traj.states[-1]
        x = z_end[:m]
        det_phi *= float(np.real(linalg.determinant(z_end[m:-1].reshape(m, m))))
        trace_integral += float(z_end[-1])
    rhs = float(np.exp(trace_integral) * np.exp(-kap * mask_v.sum() * t_end))
    return det_phi, rhs


def _inv_or_pinv(a):
    # LU flags exact singularity when transition-matrix pivots underflow
    # (extreme volume contraction); fall back to the SVD pseudo-inverse so
    # the factorization degrades to a large residual instead of crashing.
    try:
        return np.linalg.inv(a)
    except np.linalg.LinAlgError:
        return np.linalg.pinv(a)


def lf_decomposition(model: OscillatorModel, lc: LimitCycle,
                     cfg: IntegratorConfig | None = None) -> LFDecomposition:
    """Lyapunov-Floquet factorization of the uncoupled variational flow.

    R = log(phi(T,0)) / T on the principal branch, and P sampled at the
    cycle phases through P(t) = expm(R*t) @ inv(phi(t,0)).

    Accuracy note: evaluating P requires inverting phi(t,0), so for cycles
    whose transition matrix condition number approaches 1/eps (very
    strongly contracting oscillators) the late-phase samples and the
    periodicity residual saturate at roughly eps * cond(phi) regardless of
    integration tolerance.

    Raises ``SingularInput`` / ``NonDiagonalizable`` from the matrix
    logarithm when the monodromy violates its preconditions.
    """
    cfg = cfg or IntegratorConfig()
    m = model.dim
    f, jac = model.field, model.jacobian

    def aug(z):
        x = z[:m]
        y = z[m:].reshape(m, m)
        return np.concatenate([f(x), (jac(x) @ y).ravel()])

    z0 = np.concatenate([lc.anchor, np.eye(m).ravel()])
    traj = integrate(aug, z0, (0.0, lc.period), cfg)
    phi_t_flat = traj.eval(lc.times)
    phi_end = traj.states[-1][m:].reshape(m, m)

    r = linalg.log_principal(phi_end) / lc.period

    n = lc.n_samples
    p_samples = np.empty((n, m, m), dtype=complex)
    p_samples[0] = np.eye(m)
    for k in range(1, n):
        phi_k = phi_t_flat[k][m:].reshape(m, m)
        p_samples[k] = linalg.expm(r * lc.times[k]) @ _inv_or_pinv(phi_k)
    p_end = linalg.expm(r * lc.period) @ _inv_or_pinv(phi_end)
    residual = float(
        np.linalg.norm(p_end - np.eye(m)) / np.linalg.norm(np.eye(m))
    )
    return LFDecomposition(
        R=r, times=lc.times.copy(), P_samples=p_samples,
        periodicity_residual=residual, period=lc.period,
    )
