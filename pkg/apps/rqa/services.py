from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.spatial.distance import pdist, squareform

from apps.core.exceptions import InvalidSeriesError, ParameterError, SeriesLengthError, UndefinedRatioError
from apps.embedding.models import DelayEmbedding, EmbeddingParams
from apps.embedding.services import utde_embed
from apps.signals.models import TimeSeries

from .models import (
    NO_LINES,
    UNDEFINED_RATIO,
    DiagonalHistogram,
    Norm,
    RecurrenceMatrix,
    RqaMetrics,
    SweepGrid,
)

logger = logging.getLogger(__name__)


def distance_matrix(points: np.ndarray, norm_id: Norm | str = Norm.EUCLIDEAN) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    if points.shape[0] < 2:
        raise SeriesLengthError("A recurrence matrix", required=2, actual=points.shape[0])
    if not np.all(np.isfinite(points)):
        raise InvalidSeriesError("Embedding contains non-finite entries.")
    return squareform(pdist(points, metric=Norm.parse(norm_id).scipy_metric))


def recurrence_from_distances(distances: np.ndarray, epsilon: float, norm_id: Norm | str) -> RecurrenceMatrix:
    if not epsilon > 0:
        raise ParameterError(f"Recurrence threshold must be positive, got {epsilon}.")
    bits = distances <= epsilon
    bits.setflags(write=False)
    return RecurrenceMatrix(bits=bits, epsilon=float(epsilon), norm_id=Norm.parse(norm_id))


def recurrence_matrix_from_points(
    points: np.ndarray, epsilon: float, norm_id: Norm | str = Norm.EUCLIDEAN
) -> RecurrenceMatrix:
    return recurrence_from_distances(distance_matrix(points, norm_id), epsilon, norm_id)


def recurrence_matrix(emb: DelayEmbedding, epsilon: float, norm_id: Norm | str = Norm.EUCLIDEAN) -> RecurrenceMatrix:
    """Boundary-inclusive recurrence plot of the embedded points."""
    return recurrence_matrix_from_points(emb.points, epsilon, norm_id)


def rec_rate(R: RecurrenceMatrix) -> float:
    """Density of recurrence points off the line of identity."""
    n = R.size
    if n < 2:
        raise SeriesLengthError("Recurrence rate", required=2, actual=n)
    return R.off_diagonal_count() / (n * n - n)


def _upper_diagonal_walk(n: int) -> np.ndarray:
    """Flat indices into an (n+1)x(n+1) padded matrix visiting diagonals 1..n-1.

    Each diagonal is followed by the padding corner, which is always False,
    so runs never continue from one diagonal into the next.
    """
    stride = n + 1
    corner = n * stride + n
    pieces = []
    for k in range(1, n):
        i = np.arange(n - k)
        pieces.append(i * stride + i + k)
        pieces.append(np.array([corner]))
    if not pieces:
        return np.array([corner], dtype=np.intp)
    return np.concatenate(pieces).astype(np.intp)


def diagonal_histogram(R: RecurrenceMatrix, d_min: int = 2) -> DiagonalHistogram:
    """Maximal diagonal runs of recurrence points, counted in both triangles."""
    if d_min < 1:
        raise ParameterError(f"d_min must be positive, got {d_min}.")
    n = R.size
    if n < 2:
        raise SeriesLengthError("Diagonal line histogram", required=2, actual=n)
    padded = np.zeros((n + 1, n + 1), dtype=bool)
    padded[:n, :n] = R.bits
    sequence = np.concatenate(([False], padded.ravel()[_upper_diagonal_walk(n)], [False])).astype(np.int8)
    edges = np.diff(sequence)
    lengths = np.flatnonzero(edges == -1) - np.flatnonzero(edges == 1)
    if lengths.size == 0:
        return DiagonalHistogram(counts={}, d_min=d_min)
    tally = np.bincount(lengths)
    counts = {int(length): 2 * int(count) for length, count in enumerate(tally) if count}
    return DiagonalHistogram(counts=counts, d_min=d_min)


def det_rate(R: RecurrenceMatrix, hist: DiagonalHistogram) -> float:
    """Share of off-identity recurrence points lying on diagonal lines of length >= d_min."""
    recurrent = R.off_diagonal_count()
    if recurrent == 0:
        return 0.0
    return hist.points_on_lines() / recurrent


def ratio(rec: float, det: float) -> float:
    if rec == 0:
        raise UndefinedRatioError("RATIO is undefined when REC is zero.")
    return det / rec


def entropy(hist: DiagonalHistogram) -> float:
    """Shannon entropy (nats) of the diagonal line-length distribution for l >= d_min."""
    lines = hist.lines()
    total = sum(lines.values())
    if total == 0:
        return 0.0
    value = -math.fsum((count / total) * math.log(count / total) for count in lines.values())
    return value if value > 0.0 else 0.0


def rqa_from_matrix(R: RecurrenceMatrix, d_min: int = 2) -> RqaMetrics:
    hist = diagonal_histogram(R, d_min)
    rec = rec_rate(R)
    det = det_rate(R, hist)
    ent = entropy(hist)
    flags = set()
    if not hist.lines():
        flags.add(NO_LINES)
    try:
        rat = ratio(rec, det)
    except UndefinedRatioError:
        rat = None
        flags.add(UNDEFINED_RATIO)
    return RqaMetrics(rec=rec, det=det, ratio=rat, ent=ent, histogram=hist, flags=frozenset(flags))


def _require_rows(n: int, params: EmbeddingParams) -> None:
    required = params.required_length() + 1
    if n < required:
        raise SeriesLengthError(
            f"RQA with m={params.dimension_m}, tau={params.delay_tau}", required=required, actual=n
        )


def rqa_all(
    x: TimeSeries,
    params: EmbeddingParams,
    epsilon: float,
    norm_id: Norm | str = Norm.EUCLIDEAN,
    d_min: int = 2,
) -> RqaMetrics:
    _require_rows(len(x), params)
    R = recurrence_matrix(utde_embed(x, params), epsilon, norm_id)
    metrics = rqa_from_matrix(R, d_min)
    logger.debug(
        "RQA %r m=%d tau=%d eps=%g: REC=%.6f DET=%.6f",
        x.label, params.dimension_m, params.delay_tau, epsilon, metrics.rec, metrics.det,
    )
    return metrics


def _sweep_column(
    x: TimeSeries,
    m: int,
    tau: int,
    eps_values: Sequence[float],
    norm_id: Norm,
    d_min: int,
) -> list[RqaMetrics] | None:
    params = EmbeddingParams(dimension_m=m, delay_tau=tau)
    if len(x) < params.required_length() + 1:
        logger.debug("Sweep cell m=%d tau=%d infeasible for %d samples", m, tau, len(x))
        return None
    distances = distance_matrix(utde_embed(x, params).points, norm_id)
    return [rqa_from_matrix(recurrence_from_distances(distances, eps, norm_id), d_min) for eps in eps_values]


def sweep(
    x: TimeSeries,
    m_range: Sequence[int],
    tau_range: Sequence[int],
    eps_range: Sequence[float],
    norm_id: Norm | str = Norm.EUCLIDEAN,
    d_min: int = 2,
    *,
    workers: int = 1,
) -> SweepGrid:
    """RQA metrics over the cartesian grid m x tau x epsilon.

    One distance matrix is built per (m, tau) and thresholded at every
    epsilon. Cells are independent; ``workers`` > 1 evaluates (m, tau) pairs
    on a thread pool and the grid is identical either way.
    """
    if not m_range or not tau_range or not eps_range:
        raise ParameterError("Sweep ranges must be non-empty.")
    if any(eps <= 0 for eps in eps_range):
        raise ParameterError("Sweep thresholds must be positive.")
    norm = Norm.parse(norm_id)
    m_values = tuple(int(m) for m in m_range)
    tau_values = tuple(int(t) for t in tau_range)
    eps_values = tuple(float(e) for e in eps_range)
    pairs = [(m, tau) for m in m_values for tau in tau_values]

    def run(pair: tuple[int, int]) -> list[RqaMetrics] | None:
        return _sweep_column(x, pair[0], pair[1], eps_values, norm, d_min)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = list(pool.map(run, pairs))
    else:
        columns = [run(pair) for pair in pairs]

    cells = np.empty((len(m_values), len(tau_values), len(eps_values)), dtype=object)
    for (m, tau), column in zip(pairs, columns):
        i, j = m_values.index(m), tau_values.index(tau)
        for k in range(len(eps_values)):
            cells[i, j, k] = None if column is None else column[k]
    grid = SweepGrid(m_values=m_values, tau_values=tau_values, eps_values=eps_values, cells=cells)
    logger.info("Sweep %r: grid %s, %d feasible cells", x.label, grid.shape, grid.feasible_count())
    return grid


SWEEP_HEADER = ["m", "tau", "eps", "rec", "det", "ratio", "ent"]


def sweep_rows(grid: SweepGrid) -> list[list]:
    """Long-format rows in m, tau, eps order; infeasible cells keep empty metric fields."""
    rows = []
    for i, m in enumerate(grid.m_values):
        for j, tau in enumerate(grid.tau_values):
            for k, eps in enumerate(grid.eps_values):
                cell = grid.cells[i, j, k]
                if cell is None:
                    rows.append([m, tau, eps, None, None, None, None])
                else:
                    rows.append([m, tau, eps, cell.rec, cell.det, cell.ratio, cell.ent])
    return rows
