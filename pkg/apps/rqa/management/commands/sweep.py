from __future__ import annotations

from django.conf import settings

from apps.core.csvio import write_rows
from apps.preprocess.commands import SeriesInputCommand

from ...forms import SweepForm
from ...services import SWEEP_HEADER, sweep, sweep_rows


class Command(SeriesInputCommand):
    help = "RQA metrics over an (m, tau, eps) grid as long-format CSV."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        defaults = settings.ANALYSIS
        parser.add_argument("--m", default="1:10")
        parser.add_argument("--tau", default="1:10")
        parser.add_argument("--eps", default="0.2:3.0:0.1")
        parser.add_argument("--norm", default=defaults["NORM"])
        parser.add_argument("--dmin", type=int, default=defaults["D_MIN"])
        parser.add_argument("--workers", type=int, default=defaults["BATCH_WORKERS"])
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        ranges = self.validated(
            SweepForm(
                data={key: options[key] for key in ("m", "tau", "eps", "norm", "dmin", "workers")}
            )
        )
        with self.reporting_errors():
            series = self.load_series(options)
            grid = sweep(
                series,
                ranges["m"],
                ranges["tau"],
                ranges["eps"],
                ranges["norm"],
                ranges["dmin"],
                workers=ranges["workers"],
            )
            write_rows(options["out"], SWEEP_HEADER, sweep_rows(grid))
