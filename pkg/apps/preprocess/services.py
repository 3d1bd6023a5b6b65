from __future__ import annotations

import logging
import math

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.ndimage import convolve1d

from apps.core.exceptions import DegenerateVarianceError, ParameterError, SeriesLengthError, WindowBoundsError
from apps.signals.models import TimeSeries

from .models import SMOOTHING_LEVELS, SmoothingSpec, WindowSpec

logger = logging.getLogger(__name__)


def zmuv_normalize(x: TimeSeries) -> TimeSeries:
    """Zero mean, unit variance: (x - mean) / std with the N-1 sample standard deviation."""
    samples = x.samples
    if samples.size < 2:
        raise SeriesLengthError("Normalization needs a sample standard deviation", required=2, actual=samples.size)
    if np.ptp(samples) == 0.0:
        raise DegenerateVarianceError(f"Series {x.label!r} is constant; its variance is zero.")
    mean = samples.mean()
    std = samples.std(ddof=1)
    if std == 0.0:
        raise DegenerateVarianceError(f"Series {x.label!r} has zero sample standard deviation.")
    return x.with_samples((samples - mean) / std)


def _window_fit(spec: SmoothingSpec) -> tuple[int, np.ndarray, np.ndarray]:
    """Least-squares fit over the window on offsets scaled to [-1, 1].

    Returns the half width, the scaled offsets and the pseudo-inverse mapping
    window samples to power-basis coefficients in the scaled offset.
    """
    half = spec.window_length // 2
    offsets = np.arange(-half, half + 1, dtype=float) / half
    vander = P.polyvander(offsets, spec.poly_order)
    return half, offsets, np.linalg.pinv(vander)


def sg_coefficients(spec: SmoothingSpec, *, delta: float = 1.0) -> np.ndarray:
    """Convolution coefficients of the Savitzky-Golay filter, ordered like ``savgol_coeffs(use="conv")``.

    ``delta`` is the sample spacing used to scale derivative filters.
    """
    half, _, fit = _window_fit(spec)
    deriv = spec.derivative_order
    row = fit[deriv] * math.factorial(deriv) / (half * delta) ** deriv
    return row[::-1].copy()


def sg_smooth(x: TimeSeries, spec: SmoothingSpec) -> TimeSeries:
    """Savitzky-Golay smoothed series x~(n), same length as the input.

    Interior points are the convolution with ``sg_coefficients``; the first and
    last half-windows take the values of the polynomial fitted to the first and
    last full window.
    """
    n, width = len(x), spec.window_length
    if n < width:
        raise SeriesLengthError(f"Savitzky-Golay window of {width}", required=width, actual=n)
    delta = 1.0 / x.sample_rate_hz
    deriv = spec.derivative_order
    smoothed = convolve1d(x.samples, sg_coefficients(spec, delta=delta), mode="constant")

    half, offsets, fit = _window_fit(spec)
    scale = 1.0 / (half * delta) ** deriv
    edges = (
        (x.samples[:width], offsets[:half], slice(0, half)),
        (x.samples[n - width :], offsets[half + 1 :], slice(n - half, n)),
    )
    for window, positions, target in edges:
        poly = P.polyder(fit @ window, deriv) * scale
        smoothed[target] = P.polyval(positions, poly)
    return x.with_samples(smoothed)


def window_slice(x: TimeSeries, w: WindowSpec) -> TimeSeries:
    end = w.offset_samples + w.length_samples
    if end > len(x):
        raise WindowBoundsError(offset=w.offset_samples, length=w.length_samples, available=len(x))
    return x.with_samples(x.samples[w.offset_samples:end])


def apply_smoothness(x: TimeSeries, level: str) -> TimeSeries:
    try:
        spec = SMOOTHING_LEVELS[level]
    except KeyError:
        raise ParameterError(f"Unknown smoothness level {level!r}; choose from {sorted(SMOOTHING_LEVELS)}.") from None
    out = zmuv_normalize(x)
    if spec is not None:
        out = sg_smooth(out, spec)
    return out.with_samples(out.samples, label=f"{level}zmuv{x.label}")


def prepare_series(x: TimeSeries, smoothness: str = "sg0", window: WindowSpec | None = None) -> TimeSeries:
    """Window, then normalize, then smooth: the fixed postprocessing order."""
    if window is not None:
        x = window_slice(x, window)
    prepared = apply_smoothness(x, smoothness)
    logger.debug("Prepared %r: %d samples at level %s", x.label, len(prepared), smoothness)
    return prepared
