"""Master stability function: the largest Floquet multiplier modulus of the
eigenmode system [Df(x_s) - kappa*DH] as a function of the effective
coupling kappa = K*lambda, plus grid sweeps and the network
synchronization predicate.

At kappa = 0 the unity multiplier (the perturbation along the cycle) is
excluded from the maximum; at kappa != 0 every multiplier is retained, so
the instability of negatively coupled modes is visible.  The MSF depends
on the product K*lambda only, never on K and lambda separately.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import DisconnectedGraph
from .floquet import Monodromy, monodromy
from .limit_cycle import LimitCycle
from .models import OscillatorModel
from .network import GraphSpec
from .ode import IntegratorConfig

__all__ = ["MsfPoint", "MsfCurve", "SyncVerdict", "msf_point", "msf_sweep",
           "sync_predicate", "resolve_workers", "default_kappa_grid"]


def default_kappa_grid():
    """Default sweep grid: kappa = 0 plus 50 log-spaced points in
    [0.01, 10]."""
    return np.concatenate([[0.0], np.geomspace(0.01, 10.0, 50)])


@dataclass(frozen=True)
class MsfPoint:
    """MSF sample: effective coupling, retained maximum multiplier
    modulus, and the full multiplier list."""

    kappa: float
    mu_max: float
    multipliers: np.ndarray


@dataclass(frozen=True)
class MsfCurve:
    """MSF samples at strictly increasing kappa, all computed against the
    same cycle and coupling mask."""

    points: tuple[MsfPoint, ...]
    model_name: str
    mask: np.ndarray
    period: float

    @property
    def kappas(self):
        return np.array([p.kappa for p in self.points])

    @property
    def mu_max(self):
        return np.array([p.mu_max for p in self.points])


@dataclass(frozen=True)
class SyncVerdict:
    """Per-eigenmode MSF evaluation and the resulting verdict.

    ``lambdas``/``mu_max`` cover every Laplacian eigenvalue in ascending
    order.  Mode 1 (lambda = 0, motion along the synchronized solution) is
    reported but excluded from the verdict; the network synchronizes iff
    K != 0 and every transverse mode has mu_max < 1.
    """

    K: float
    synchronizes: bool
    lambdas: np.ndarray
    mu_max: np.ndarray

    @property
    def per_mode(self):
        return list(zip(self.lambdas.tolist(), self.mu_max.tolist()))


def _mu_max_of(mon: Monodromy) -> float:
    mods = np.abs(mon.multipliers)
    if mon.kappa == 0.0:
        i = mon.unity_index()
        if i is not None:
            mods = np.delete(mods, i)
    return float(mods.max()) if mods.size else 0.0


def msf_point(model: OscillatorModel, lc: LimitCycle, kappa: float,
              mask=None, cfg: IntegratorConfig | None = None) -> MsfPoint:
    """One MSF sample at effective coupling ``kappa``.

    ``kappa`` is normally >= 0 (the curve's domain); negative values are
    accepted so the synchronization predicate can expose the K < 0
    instability directly.
    """
    mon = monodromy(model, lc, kappa=kappa, mask=mask, cfg=cfg)
    return MsfPoint(kappa=float(kappa), mu_max=_mu_max_of(mon),
                    multipliers=mon.multipliers)


def resolve_workers(workers: int | None = None) -> int:
    """Worker count for sweep parallelism.

    Explicit argument wins; otherwise the FLOQNET_THREADS environment
    variable (0 = auto = CPU count); otherwise serial.
    """
    if workers is None:
        env = os.environ.get("FLOQNET_THREADS", "").strip()
        if not env:
            return 1
        workers = int(env)
    if workers == 0:
        return os.cpu_count() or 1
    if workers < 0:
        raise ValueError("worker count must be >= 0")
    return workers


def msf_sweep(model: OscillatorModel, lc: LimitCycle, mask, kappa_grid,
              cfg: IntegratorConfig | None = None,
              workers: int | None = None) -> MsfCurve:
    """Evaluate the MSF on a strictly increasing grid of kappa >= 0.

    Points are independent and may be computed concurrently; results are
    always assembled in grid order, so the output is reproducible
    regardless of execution schedule.  Any point failure fails the sweep.
    """
    grid = np.asarray(kappa_grid, dtype=float).ravel()
    if grid.size == 0:
        raise ValueError("empty kappa grid")
    if np.any(grid < 0):
        raise ValueError("kappa grid values must be >= 0")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise ValueError("kappa grid must be strictly increasing")

    n_workers = resolve_workers(workers)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            points = list(pool.map(
                lambda k: msf_point(model, lc, k, mask=mask, cfg=cfg), grid
            ))
    else:
        points = [msf_point(model, lc, k, mask=mask, cfg=cfg) for k in grid]
    return MsfCurve(points=tuple(points), model_name=model.name,
                    mask=np.asarray(mask if mask is not None
                                    else np.ones(model.dim), dtype=float),
                    period=lc.period)


def sync_predicate(model: OscillatorModel, lc: LimitCycle, graph: GraphSpec,
                   K: float, mask=None,
                   cfg: IntegratorConfig | None = None) -> SyncVerdict:
    """Spectral synchronization verdict for a coupled network.

    Evaluates the MSF at kappa = K*lambda_i for every transverse eigenmode
    i = 2..n; the network synchronizes iff all of them have mu_max < 1.
    K = 0 is declared non-synchronizing outright: the modes decouple and
    transverse perturbations inherit the full uncoupled spectrum,
    including the unity multiplier.

    Raises :class:`DisconnectedGraph` when lambda_2 <= 1e-10.
    """
    lambdas = graph.eigenvalues
    if lambdas[1] <= 1e-10:
        raise DisconnectedGraph(
            f"algebraic connectivity {lambdas[1]:.3g} <= 1e-10; "
            "the graph must be connected"
        )
    K = float(K)
    mu_by_kappa: dict[float, float] = {}
    mu = np.empty(graph.n)
    for i, lam in enumerate(lambdas):
        kap = K * float(lam)
        if kap not in mu_by_kappa:
            mu_by_kappa[kap] = msf_point(model, lc, kap, mask=mask,
                                         cfg=cfg).mu_max
        mu[i] = mu_by_kappa[kap]
    synchronizes = K != 0.0 and bool(np.all(mu[1:] < 1.0))
    return SyncVerdict(K=K, synchronizes=synchronizes,
                       lambdas=np.asarray(lambdas, dtype=float), mu_max=mu)
