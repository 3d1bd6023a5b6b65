from __future__ import annotations

from dataclasses import dataclass

from apps.core.exceptions import ParameterError


@dataclass(frozen=True)
class SmoothingSpec:
    """Savitzky-Golay filter: polynomial order p, odd window length n, m-th derivative."""

    poly_order: int
    window_length: int
    derivative_order: int = 0

    def __post_init__(self) -> None:
        if self.poly_order < 1:
            raise ParameterError(f"poly_order must be positive, got {self.poly_order}.")
        if self.window_length < 1 or self.window_length % 2 == 0:
            raise ParameterError(f"window_length must be odd and positive, got {self.window_length}.")
        if self.window_length <= self.poly_order:
            raise ParameterError(
                f"window_length ({self.window_length}) must exceed poly_order ({self.poly_order})."
            )
        if not 0 <= self.derivative_order <= self.poly_order:
            raise ParameterError(
                f"derivative_order must lie in [0, {self.poly_order}], got {self.derivative_order}."
            )


@dataclass(frozen=True)
class WindowSpec:
    length_samples: int
    offset_samples: int = 0

    def __post_init__(self) -> None:
        if self.length_samples < 1:
            raise ParameterError(f"length_samples must be positive, got {self.length_samples}.")
        if self.offset_samples < 0:
            raise ParameterError(f"offset_samples must be non-negative, got {self.offset_samples}.")


# Smoothness levels; every level is applied to z-scored data (normalize, then smooth).
SMOOTHING_LEVELS: dict[str, SmoothingSpec | None] = {
    "sg0": None,
    "sg1": SmoothingSpec(poly_order=5, window_length=29),
    "sg2": SmoothingSpec(poly_order=5, window_length=159),
}

# Window lengths in samples at 50 Hz: 2 s, 5 s, 10 s and 15 s.
WINDOW_PRESETS: dict[str, int] = {
    "w100": 100,
    "w250": 250,
    "w500": 500,
    "w750": 750,
}
