from __future__ import annotations

from pathlib import Path

from django.conf import settings

from apps.core.csvio import write_rows
from apps.embedding.models import EmbeddingParams
from apps.preprocess.commands import SeriesInputCommand

from ...models import Norm
from ...services import rqa_all

HEADER = ["file", "m", "tau", "eps", "rec", "det", "ratio", "ent"]


class Command(SeriesInputCommand):
    help = "REC, DET, RATIO and ENT of one or more CSV series at fixed (m, tau, eps)."

    multiple_inputs = True

    def add_arguments(self, parser):
        super().add_arguments(parser)
        defaults = settings.ANALYSIS
        parser.add_argument("--m", type=int, default=defaults["M"])
        parser.add_argument("--tau", type=int, default=defaults["TAU"])
        parser.add_argument("--eps", type=float, default=defaults["EPSILON"])
        parser.add_argument("--norm", choices=[norm.value for norm in Norm], default=defaults["NORM"])
        parser.add_argument("--dmin", type=int, default=defaults["D_MIN"])
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        with self.reporting_errors():
            params = EmbeddingParams(dimension_m=options["m"], delay_tau=options["tau"])
            rows = []
            for path in options["input"]:
                series = self.load_series(options, path)
                metrics = rqa_all(series, params, options["eps"], options["norm"], options["dmin"])
                rows.append(
                    [
                        Path(path).name,
                        params.dimension_m,
                        params.delay_tau,
                        options["eps"],
                        metrics.rec,
                        metrics.det,
                        metrics.ratio,
                        metrics.ent,
                    ]
                )
            write_rows(options["out"], HEADER, rows)
