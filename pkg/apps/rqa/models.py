from __future__ import annotations

from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__

import numpy as np

from apps.core.exceptions import ParameterError


class Norm(StrEnum):
    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"
    MAXIMUM = "maximum"

    @property
    def scipy_metric(self) -> str:
        return {"euclidean": "euclidean", "manhattan": "cityblock", "maximum": "chebyshev"}[self.value]

    @classmethod
    def parse(cls, value: str | Norm) -> Norm:
        try:
            return cls(value)
        except ValueError:
            raise ParameterError(f"Unknown norm {value!r}; choose from {[n.value for n in cls]}.") from None


NO_LINES = "no-lines"
UNDEFINED_RATIO = "undefined-ratio"


@dataclass(frozen=True, eq=False)
class RecurrenceMatrix:
    """R[i, j] = 1 iff |X(i) - X(j)| <= epsilon; symmetric with an all-true line of identity."""

    bits: np.ndarray = field(repr=False)
    epsilon: float
    norm_id: Norm

    @property
    def size(self) -> int:
        return int(self.bits.shape[0])

    def off_diagonal_count(self) -> int:
        return int(np.count_nonzero(self.bits)) - self.size


@dataclass(frozen=True)
class DiagonalHistogram:
    """H_D(l): number of maximal diagonal runs of length l off the line of identity, both triangles."""

    counts: dict[int, int]
    d_min: int

    def lines(self) -> dict[int, int]:
        return {length: count for length, count in self.counts.items() if length >= self.d_min}

    def points_on_lines(self) -> int:
        return sum(length * count for length, count in self.lines().items())


@dataclass(frozen=True)
class RqaMetrics:
    rec: float
    det: float
    ratio: float | None
    ent: float
    histogram: DiagonalHistogram | None = None
    flags: frozenset[str] = frozenset()


@dataclass(frozen=True, eq=False)
class SweepGrid:
    """RQA metrics over m x tau x epsilon; a cell is None when the series is too short for (m, tau)."""

    m_values: tuple[int, ...]
    tau_values: tuple[int, ...]
    eps_values: tuple[float, ...]
    cells: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (len(self.m_values), len(self.tau_values), len(self.eps_values))

    def cell(self, m: int, tau: int, eps: float) -> RqaMetrics | None:
        return self.cells[self.m_values.index(m), self.tau_values.index(tau), self.eps_values.index(eps)]

    def feasible_count(self) -> int:
        return sum(1 for cell in self.cells.flat if cell is not None)
