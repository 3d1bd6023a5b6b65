from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from apps.core.exceptions import ParameterError


@dataclass(frozen=True)
class EmbeddingParams:
    dimension_m: int
    delay_tau: int

    def __post_init__(self) -> None:
        if self.dimension_m < 1:
            raise ParameterError(f"Embedding dimension must be at least 1, got {self.dimension_m}.")
        if self.delay_tau < 1:
            raise ParameterError(f"Embedding delay must be at least 1, got {self.delay_tau}.")

    def required_length(self) -> int:
        """Smallest series length that yields one embedded row."""
        return (self.dimension_m - 1) * self.delay_tau + 1


@dataclass(frozen=True, eq=False)
class DelayEmbedding:
    """Uniform time-delay matrix: row r is (x[r], x[r+tau], ..., x[r+(m-1)tau])."""

    rows: np.ndarray = field(repr=False)
    params: EmbeddingParams
    source_len: int

    @property
    def row_count(self) -> int:
        return int(self.rows.shape[0])

    @property
    def points(self) -> np.ndarray:
        return self.rows


@dataclass(frozen=True, eq=False)
class CaoCurves:
    """E1(m) and E2(m) for m = 1..m_max (index 0 holds m = 1).

    ``e`` and ``e_star`` hold E(d) and E*(d) for d = 1..m_max+1; ``skipped``
    counts, per d, the points dropped because their nearest neighbour
    coincided with them.
    """

    e1: np.ndarray = field(repr=False)
    e2: np.ndarray = field(repr=False)
    tau_used: int
    e: np.ndarray = field(repr=False)
    e_star: np.ndarray = field(repr=False)
    skipped: tuple[int, ...] = ()

    @property
    def m_max(self) -> int:
        return int(self.e1.size)


@dataclass(frozen=True, eq=False)
class AmiCurve:
    """I(tau) in bits for tau = 0..tau_max over an equal-width bins x bins grid."""

    values_bits: np.ndarray = field(repr=False)
    bins: int
    degenerate: bool = False

    @property
    def tau_max(self) -> int:
        return int(self.values_bits.size) - 1


@dataclass(frozen=True)
class FirstMinimum:
    tau: int
    monotone: bool = False
