"""
Derivative-free search used by the discord and 1-norm GQD minimisations.
A coarse angle grid picks the first start, seeded random restarts add more,
and each start is refined by coordinate descent with a shrinking step.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from errors import ConfigError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OptimizerConfig:
    """Search budget; immutable so concurrent callers can share one instance."""

    grid_resolution: int = 24
    iterations: int = 200
    restarts: int = 8
    seed: int = 0
    tolerance: float = 1e-9

    def validate(self):
        for name in ("grid_resolution", "iterations", "restarts"):
            if getattr(self, name) < 1:
                raise ConfigError(f"optimizer {name} must be >= 1, got {getattr(self, name)}")
        if not self.tolerance > 0:
            raise ConfigError(f"optimizer tolerance must be > 0, got {self.tolerance}")
        return self

    def rng(self):
        return np.random.default_rng(self.seed)


def angle_grid(resolution):
    """(θ, φ) pairs: θ on [0, π] with resolution+1 points, φ on [0, 2π) with resolution points"""
    thetas = np.linspace(0.0, math.pi, resolution + 1)
    phis = np.linspace(0.0, 2 * math.pi, resolution, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    return np.column_stack([tt.ravel(), pp.ravel()])


def unit_vectors(angles):
    """Bloch directions n = (sinθ cosφ, sinθ sinφ, cosθ) for an (N, 2) array of angles"""
    angles = np.atleast_2d(angles)
    theta, phi = angles[:, 0], angles[:, 1]
    return np.column_stack([np.sin(theta) * np.cos(phi),
                            np.sin(theta) * np.sin(phi),
                            np.cos(theta)])


def random_angles(rng, count):
    """Isotropic directions on the sphere as (θ, φ)"""
    theta = np.arccos(rng.uniform(-1.0, 1.0, size=count))
    phi = rng.uniform(0.0, 2 * math.pi, size=count)
    return np.column_stack([theta, phi])


def _step_offsets(step):
    """Rows +step_0 e_0, -step_0 e_0, +step_1 e_1, ... in trial order"""
    offsets = np.zeros((2 * step.size, step.size))
    index = np.arange(step.size)
    offsets[2 * index, index] = step
    offsets[2 * index + 1, index] = -step
    return offsets


def coordinate_descent(objective, x0, step, iterations, tolerance, batched=False):
    """Minimise objective by trying ±step along each coordinate.

    The first improving trial is taken; a full pass without one halves the
    step. Stops after `iterations` passes or when every step is below tolerance.

    With batched=True the objective maps an (M, n) array of points to M values.
    Every trial of a pass then goes through one call and the pass moves to the
    best improving trial, earliest on ties.
    """
    x = np.array(x0, dtype=np.float64)
    fx = float(objective(x[None, :])[0]) if batched else objective(x)
    step = np.broadcast_to(np.asarray(step, dtype=np.float64), x.shape).copy()

    for _ in range(iterations):
        improved = False
        if batched:
            candidates = x + _step_offsets(step)
            values = np.asarray(objective(candidates), dtype=np.float64)
            best = int(np.argmin(values))
            if values[best] < fx:
                x, fx = candidates[best], float(values[best])
                improved = True
        else:
            for i in range(x.size):
                for direction in (1.0, -1.0):
                    trial = x.copy()
                    trial[i] += direction * step[i]
                    ft = objective(trial)
                    if ft < fx:
                        x, fx = trial, ft
                        improved = True
                        break
        if not improved:
            step *= 0.5
            if step.max() < tolerance:
                break
    return x, fx


def multistart_minimize(objective, starts, step, cfg, batched=False):
    """Best of coordinate descent from each start; earlier starts win ties"""
    best_x, best_f = None, math.inf
    for index, start in enumerate(starts):
        x, fx = coordinate_descent(objective, start, step, cfg.iterations, cfg.tolerance, batched)
        log.debug("restart %d: f=%.15g", index, fx)
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f
