from __future__ import annotations

import logging

import numpy as np

from apps.core.exceptions import ParameterError
from apps.embedding.models import DelayEmbedding

from .models import Trajectory3

logger = logging.getLogger(__name__)


def pca_project(emb: DelayEmbedding, k: int = 3) -> Trajectory3:
    """Project the embedding onto the top-k eigenvectors of its sample covariance (N-1 denominator).

    Each component is signed so that its largest-magnitude loading is positive.
    """
    data = np.asarray(emb.rows, dtype=float)
    rows, cols = data.shape
    if k < 1:
        raise ParameterError(f"k must be positive, got {k}.")
    if cols < k:
        raise ParameterError(f"Cannot keep {k} components of a {cols}-column embedding.")
    if rows < max(k, 2):
        raise ParameterError(f"Need at least {max(k, 2)} embedded points for {k} components, got {rows}.")

    mean = data.mean(axis=0)
    centered = data - mean
    covariance = centered.T @ centered / (rows - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(covariance)
    order = np.argsort(-eigenvalues, kind="stable")[:k]
    variances = np.clip(eigenvalues[order], 0.0, None)
    components = eigenvectors[:, order]

    pivots = np.argmax(np.abs(components), axis=0)
    signs = np.sign(components[pivots, np.arange(k)])
    signs[signs == 0] = 1.0
    components = components * signs

    tolerance = max(float(eigenvalues.max(initial=0.0)), 0.0) * cols * np.finfo(float).eps
    rank_deficient = bool(np.count_nonzero(variances > tolerance) < k)
    if rank_deficient:
        logger.warning("Projection keeps %d components but the embedding has fewer non-zero variances", k)

    return Trajectory3(
        points=centered @ components,
        explained_variance=variances,
        components=components,
        mean=mean,
        rank_deficient=rank_deficient,
    )
