from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import floor

import numpy as np
from scipy.spatial.distance import cdist

from apps.core.exceptions import (
    InvalidSeriesError,
    NoPlateauError,
    ParameterError,
    SeriesLengthError,
)
from apps.signals.models import TimeSeries

from .models import AmiCurve, CaoCurves, DelayEmbedding, EmbeddingParams, FirstMinimum

logger = logging.getLogger(__name__)

# Rows of cdist kept in memory at once during nearest-neighbour search.
_NN_BLOCK_CELLS = 4_000_000


def _delay_index(rows: int, dimension: int, tau: int) -> np.ndarray:
    return np.arange(rows)[:, None] + tau * np.arange(dimension)[None, :]


def utde_embed(x: TimeSeries, params: EmbeddingParams) -> DelayEmbedding:
    n = len(x)
    rows = n - (params.dimension_m - 1) * params.delay_tau
    if rows < 1:
        raise SeriesLengthError(
            f"Embedding with m={params.dimension_m}, tau={params.delay_tau}",
            required=params.required_length(),
            actual=n,
        )
    matrix = x.samples[_delay_index(rows, params.dimension_m, params.delay_tau)]
    matrix.setflags(write=False)
    return DelayEmbedding(rows=matrix, params=params, source_len=n)


def nearest_neighbors(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest other row of every row under the maximum norm.

    Ties go to the smallest index. Returns (indices, distances).
    """
    count = points.shape[0]
    block = max(1, _NN_BLOCK_CELLS // max(count, 1))
    indices = np.empty(count, dtype=np.intp)
    distances = np.empty(count)
    for start in range(0, count, block):
        stop = min(start + block, count)
        dist = cdist(points[start:stop], points, metric="chebyshev")
        local = np.arange(stop - start)
        dist[local, start + local] = np.inf
        nearest = np.argmin(dist, axis=1)
        indices[start:stop] = nearest
        distances[start:stop] = dist[local, nearest]
    return indices, distances


def cao_curves(x: TimeSeries, tau: int, m_max: int) -> CaoCurves:
    """Cao's E1(m) and E2(m) for m = 1..m_max at delay ``tau``.

    For each dimension d = 1..m_max+1 every point y_i(d), i < N - d*tau, is
    paired with its nearest neighbour y_n(d) under the maximum norm. The
    distance ratio a(i, d) = |y_i(d+1) - y_n(d+1)| / |y_i(d) - y_n(d)| is
    averaged into E(d) and the gap of the added coordinate |x_{i+d*tau} -
    x_{n+d*tau}| into E*(d). Points whose neighbour sits at distance zero are
    skipped and counted.
    """
    if tau < 1 or m_max < 1:
        raise ParameterError(f"tau and m_max must be positive, got tau={tau}, m_max={m_max}.")
    samples = x.samples
    n = samples.size
    required = (m_max + 1) * tau + 2
    if n < required:
        raise SeriesLengthError(f"Cao curves up to m={m_max} at tau={tau}", required=required, actual=n)

    e = np.empty(m_max + 1)
    e_star = np.empty(m_max + 1)
    skipped: list[int] = []
    for d in range(1, m_max + 2):
        count = n - d * tau
        points = samples[_delay_index(count, d, tau)]
        nearest, dist = nearest_neighbors(points)
        added_gap = np.abs(samples[np.arange(count) + d * tau] - samples[nearest + d * tau])
        valid = dist > 0.0
        n_skipped = int(count - np.count_nonzero(valid))
        skipped.append(n_skipped)
        if n_skipped:
            logger.warning("Cao d=%d tau=%d: skipped %d points with coincident neighbours", d, tau, n_skipped)
        if not valid.any():
            raise InvalidSeriesError(f"Every embedded point at d={d} coincides with its neighbour.")
        ratios = np.maximum(dist[valid], added_gap[valid]) / dist[valid]
        e[d - 1] = ratios.mean()
        e_star[d - 1] = added_gap[valid].mean()
        logger.debug("Cao d=%d tau=%d: E=%.6f E*=%.6f", d, tau, e[d - 1], e_star[d - 1])

    if np.any(e_star == 0.0):
        raise InvalidSeriesError("E*(d) vanished; the series is exactly predictable and E2 is undefined.")

    return CaoCurves(
        e1=e[1:] / e[:-1],
        e2=e_star[1:] / e_star[:-1],
        tau_used=tau,
        e=e,
        e_star=e_star,
        skipped=tuple(skipped),
    )


def cao_diagnostic(x: TimeSeries, tau_values: Iterable[int], m_max: int) -> dict[int, CaoCurves]:
    return {tau: cao_curves(x, tau, m_max) for tau in tau_values}


def select_min_dimension(curves: CaoCurves, plateau_band: float = 0.05) -> int:
    """Smallest m from which E1 stays inside 1 +/- plateau_band up to the end of the curve."""
    if curves.e1.size == 0:
        raise ParameterError("Cao curves are empty.")
    if plateau_band <= 0:
        raise ParameterError(f"plateau_band must be positive, got {plateau_band}.")
    inside = np.abs(curves.e1 - 1.0) <= plateau_band
    if not inside[-1]:
        raise NoPlateauError(
            f"E1 never settles within 1 +/- {plateau_band} up to m={curves.m_max}; try a larger m_max."
        )
    outside = np.flatnonzero(~inside)
    return int(outside[-1]) + 2 if outside.size else 1


def ami_curve(x: TimeSeries, tau_max: int, bins: int = 16) -> AmiCurve:
    """Average mutual information I(tau) = sum p_ij log2(p_ij / (p_i p_j)) for tau = 0..tau_max."""
    if tau_max < 0 or bins < 1:
        raise ParameterError(f"tau_max must be non-negative and bins positive, got {tau_max}, {bins}.")
    samples = x.samples
    n = samples.size
    if n - tau_max < 2 * bins:
        raise SeriesLengthError(
            f"AMI up to tau={tau_max} with {bins} bins", required=tau_max + 2 * bins, actual=n
        )
    lo, hi = float(samples.min()), float(samples.max())
    if lo == hi:
        logger.warning("AMI on constant series %r: returning a zero curve", x.label)
        return AmiCurve(values_bits=np.zeros(tau_max + 1), bins=bins, degenerate=True)

    values = np.empty(tau_max + 1)
    grid = [[lo, hi], [lo, hi]]
    for tau in range(tau_max + 1):
        joint, _, _ = np.histogram2d(samples[: n - tau], samples[tau:], bins=bins, range=grid)
        p_ij = joint / joint.sum()
        p_i = p_ij.sum(axis=1)
        p_j = p_ij.sum(axis=0)
        occupied = p_ij > 0
        independent = np.outer(p_i, p_j)
        values[tau] = float(np.sum(p_ij[occupied] * np.log2(p_ij[occupied] / independent[occupied])))
    return AmiCurve(values_bits=np.maximum(values, 0.0), bins=bins)


def first_local_minimum(curve: AmiCurve) -> FirstMinimum:
    """First tau >= 1 with I(tau) < I(tau-1) and I(tau) <= I(tau+1).

    A flat minimum resolves to its first index. A curve without such a point
    yields tau_max with ``monotone`` set.
    """
    values = curve.values_bits
    if values.size < 3:
        raise ParameterError(f"First-minimum search needs at least 3 AMI values, got {values.size}.")
    for tau in range(1, values.size - 1):
        if values[tau] < values[tau - 1] and values[tau] <= values[tau + 1]:
            return FirstMinimum(tau=tau)
    logger.warning("AMI curve has no interior minimum up to tau=%d", curve.tau_max)
    return FirstMinimum(tau=curve.tau_max, monotone=True)


def estimate_params(
    x: TimeSeries,
    *,
    tau_max: int,
    m_max: int,
    bins: int = 16,
    plateau_band: float = 0.05,
) -> EmbeddingParams:
    """tau0 from the first AMI minimum, then m0 from Cao's E1 plateau at tau0."""
    tau0 = first_local_minimum(ami_curve(x, tau_max, bins)).tau
    m0 = select_min_dimension(cao_curves(x, tau0, m_max), plateau_band)
    logger.info("Estimated embedding for %r: m0=%d tau0=%d", x.label, m0, tau0)
    return EmbeddingParams(dimension_m=m0, delay_tau=tau0)


def _round_half_up(value: Fraction) -> int:
    return floor(value + Fraction(1, 2))


def consensus_params(per_series: Sequence[EmbeddingParams]) -> EmbeddingParams:
    """Sample mean of each parameter, rounded half-up."""
    if not per_series:
        raise ParameterError("Consensus needs at least one parameter pair.")
    count = len(per_series)
    m_mean = Fraction(sum(p.dimension_m for p in per_series), count)
    tau_mean = Fraction(sum(p.delay_tau for p in per_series), count)
    return EmbeddingParams(dimension_m=_round_half_up(m_mean), delay_tau=_round_half_up(tau_mean))
