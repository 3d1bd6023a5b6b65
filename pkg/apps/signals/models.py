from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from apps.core.exceptions import InvalidSeriesError, ParameterError


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Uniformly sampled scalar series: x(n), n = 0..N-1, sampled every 1/sample_rate_hz seconds."""

    samples: np.ndarray = field(repr=False)
    sample_rate_hz: float = 1.0
    label: str = ""

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=float).reshape(-1)
        if samples.size == 0:
            raise InvalidSeriesError("A time series needs at least one sample.")
        if not np.all(np.isfinite(samples)):
            bad = int(np.flatnonzero(~np.isfinite(samples))[0])
            raise InvalidSeriesError(f"Sample {bad} is not finite.")
        if not np.isfinite(self.sample_rate_hz) or self.sample_rate_hz <= 0:
            raise InvalidSeriesError(f"sample_rate_hz must be positive, got {self.sample_rate_hz}.")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return int(self.samples.size)

    def with_samples(self, samples: np.ndarray, label: str | None = None) -> TimeSeries:
        return TimeSeries(samples, self.sample_rate_hz, self.label if label is None else label)


@dataclass(frozen=True)
class LorenzParams:
    rho: float = 28.0
    sigma: float = 10.0
    beta: float = 8.0 / 3.0
    dt: float = 0.01
    transient_steps: int = 1000
    initial_state: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self) -> None:
        if not self.dt > 0:
            raise ParameterError(f"dt must be positive, got {self.dt}.")
        if self.transient_steps < 0:
            raise ParameterError(f"transient_steps must be non-negative, got {self.transient_steps}.")
        if len(self.initial_state) != 3:
            raise ParameterError("initial_state needs exactly three values.")
