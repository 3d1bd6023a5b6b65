from __future__ import annotations

from apps.core.csvio import write_rows

from ...commands import SeriesInputCommand


class Command(SeriesInputCommand):
    help = "Window, z-score and Savitzky-Golay smooth one CSV column (index,value)."

    default_smoothness = "sg0"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        with self.reporting_errors():
            series = self.load_series(options)
            write_rows(options["out"], ["index", "value"], enumerate(series.samples))
