from __future__ import annotations

from pathlib import Path

from django.conf import settings

from apps.core.commands import AnalysisCommand
from apps.core.csvio import read_columns
from apps.core.exceptions import ParameterError
from apps.signals.models import TimeSeries

from .models import SMOOTHING_LEVELS, WINDOW_PRESETS, WindowSpec
from .services import prepare_series, window_slice

RAW = "none"


class SeriesInputCommand(AnalysisCommand):
    """Commands that read one numeric CSV column and optionally window/normalize/smooth it."""

    default_smoothness = RAW
    multiple_inputs = False

    def add_arguments(self, parser):
        if self.multiple_inputs:
            parser.add_argument("--in", dest="input", required=True, nargs="+")
        else:
            parser.add_argument("--in", dest="input", required=True)
        parser.add_argument("--column", default="value")
        parser.add_argument(
            "--smooth",
            choices=[RAW, *SMOOTHING_LEVELS],
            default=self.default_smoothness,
            help="Smoothness level applied after z-scoring; 'none' analyses the raw column.",
        )
        parser.add_argument("--window-offset", type=int, default=0)
        parser.add_argument("--window-length", type=int)
        parser.add_argument(
            "--window",
            choices=list(WINDOW_PRESETS),
            help="Preset window length at 50 Hz: w100, w250, w500 or w750 samples.",
        )
        parser.add_argument("--sample-rate", type=float, default=settings.ANALYSIS["SAMPLE_RATE_HZ"])

    def window(self, options, available: int) -> WindowSpec | None:
        offset = options.get("window_offset") or 0
        length = options.get("window_length")
        preset = options.get("window")
        if preset:
            if length is not None:
                raise ParameterError("Use either --window or --window-length, not both.")
            length = WINDOW_PRESETS[preset]
        if length is None and not offset:
            return None
        if length is None:
            length = available - offset
        return WindowSpec(length_samples=length, offset_samples=offset)

    def load_series(self, options, path: str | None = None) -> TimeSeries:
        path = path or options["input"]
        column = options["column"]
        values = read_columns(path, [column])[column]
        series = TimeSeries(values, options["sample_rate"], Path(path).stem)
        window = self.window(options, len(series))
        if options["smooth"] == RAW:
            return window_slice(series, window) if window is not None else series
        return prepare_series(series, options["smooth"], window)
