from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class Trajectory3:
    """Embedding rows rotated onto their leading principal axes.

    ``points`` is (rows x k), ``components`` holds the unit loadings as
    columns (m x k) and ``mean`` the per-column mean removed before rotation.
    """

    points: np.ndarray = field(repr=False)
    explained_variance: np.ndarray
    components: np.ndarray = field(repr=False)
    mean: np.ndarray = field(repr=False)
    rank_deficient: bool = False
