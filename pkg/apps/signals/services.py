"""Deterministic reference signals.

Every generator is a pure function of its arguments. Random streams come
from NumPy's ``Generator(PCG64(seed))`` and its ``standard_normal`` method
(ziggurat sampling), so a seed reproduces the same series on every platform
NumPy supports. Discrete-time indices start at i = 0.
"""

from __future__ import annotations

import logging
from collections.abc import Callable

import numpy as np

from apps.core.exceptions import IntegrationDivergenceError, ParameterError

from .models import LorenzParams, TimeSeries

logger = logging.getLogger(__name__)


def _require_samples(n_samples: int) -> None:
    if int(n_samples) < 1:
        raise ParameterError(f"n_samples must be at least 1, got {n_samples}.")


def normal_stream(seed: int, n_samples: int) -> np.ndarray:
    if int(seed) < 0:
        raise ParameterError(f"seed must be non-negative, got {seed}.")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    return rng.standard_normal(int(n_samples))


def _lorenz_rhs(state: np.ndarray, params: LorenzParams) -> np.ndarray:
    x, y, z = state
    return np.array(
        [
            params.sigma * (y - x),
            x * (params.rho - z) - y,
            x * y - params.beta * z,
        ]
    )


def _rk4_step(state: np.ndarray, params: LorenzParams) -> np.ndarray:
    dt = params.dt
    k1 = _lorenz_rhs(state, params)
    k2 = _lorenz_rhs(state + 0.5 * dt * k1, params)
    k3 = _lorenz_rhs(state + 0.5 * dt * k2, params)
    k4 = _lorenz_rhs(state + dt * k3, params)
    return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def gen_lorenz_states(params: LorenzParams, n_samples: int) -> np.ndarray:
    """Fixed-step RK4 trajectory of the Lorenz system, shape (n_samples, 3).

    The first ``params.transient_steps`` steps are discarded; row 0 is the
    state reached after the transient.
    """
    _require_samples(n_samples)
    state = np.asarray(params.initial_state, dtype=float)
    out = np.empty((int(n_samples), 3))
    total = params.transient_steps + int(n_samples)
    row = 0
    for step in range(total):
        if step >= params.transient_steps:
            out[row] = state
            row += 1
            if row == n_samples:
                break
        state = _rk4_step(state, params)
        if not np.all(np.isfinite(state)):
            raise IntegrationDivergenceError(step + 1)
    logger.debug("Integrated Lorenz system: %d samples after %d transient steps", n_samples, params.transient_steps)
    return out


def gen_lorenz_x(params: LorenzParams, n_samples: int) -> TimeSeries:
    states = gen_lorenz_states(params, n_samples)
    return TimeSeries(states[:, 0], 1.0 / params.dt, "lorenz-x")


def gen_gaussian_noise(seed: int, n_samples: int) -> TimeSeries:
    _require_samples(n_samples)
    return TimeSeries(normal_stream(seed, n_samples), 1.0, f"noise-{seed}")


def gen_harmonic(n_samples: int) -> TimeSeries:
    """Superposed harmonic oscillation sin(t/5) * sin(5t/100), t = sample index."""
    _require_samples(n_samples)
    t = np.arange(int(n_samples), dtype=float)
    return TimeSeries(np.sin(t / 5.0) * np.sin(5.0 * t / 100.0), 1.0, "harmonic")


def gen_logistic_drift(x0: float, n_samples: int) -> TimeSeries:
    """Logistic map x_{i+1} = 4 x_i (1 - x_i); the emitted value at i is x_i + 0.01 i.

    The drift term is added to the output only and never fed back into the map.
    """
    _require_samples(n_samples)
    if not 0.0 < x0 < 1.0:
        raise ParameterError(f"Logistic map start x0 must lie in (0, 1), got {x0}.")
    orbit = np.empty(int(n_samples))
    x = float(x0)
    for i in range(int(n_samples)):
        orbit[i] = x
        x = 4.0 * x * (1.0 - x)
    drift = 0.01 * np.arange(int(n_samples), dtype=float)
    return TimeSeries(orbit + drift, 1.0, "logistic-drift")


def gen_brownian(seed: int, n_samples: int) -> TimeSeries:
    """Disrupted Brownian motion x_{i+1} = x_i + 2 z_i with x_0 = 0 and z from the seeded normal stream."""
    _require_samples(n_samples)
    increments = 2.0 * normal_stream(seed, int(n_samples) - 1)
    path = np.concatenate(([0.0], np.cumsum(increments)))
    return TimeSeries(path, 1.0, f"brownian-{seed}")


GENERATORS: dict[str, Callable[..., TimeSeries]] = {
    "lorenz": lambda n, seed=0, **kw: gen_lorenz_x(kw.get("params") or LorenzParams(), n),
    "noise": lambda n, seed=0, **kw: gen_gaussian_noise(seed, n),
    "harmonic": lambda n, seed=0, **kw: gen_harmonic(n),
    "logistic": lambda n, seed=0, **kw: gen_logistic_drift(kw.get("x0", 0.4), n),
    "brownian": lambda n, seed=0, **kw: gen_brownian(seed, n),
}


def generate(system: str, n_samples: int, seed: int = 0, **kwargs) -> TimeSeries:
    try:
        factory = GENERATORS[system]
    except KeyError:
        raise ParameterError(f"Unknown system {system!r}; choose from {sorted(GENERATORS)}.") from None
    return factory(n_samples, seed, **kwargs)
