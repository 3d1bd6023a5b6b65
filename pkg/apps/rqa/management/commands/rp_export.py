from __future__ import annotations

import numpy as np
from django.conf import settings

from apps.core.csvio import read_columns
from apps.core.exceptions import WindowBoundsError
from apps.embedding.models import EmbeddingParams
from apps.embedding.services import utde_embed
from apps.preprocess.commands import SeriesInputCommand

from ...export import write_pgm
from ...models import Norm
from ...services import recurrence_matrix, recurrence_matrix_from_points


class Command(SeriesInputCommand):
    help = "Export a recurrence plot as a binary PGM image."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        defaults = settings.ANALYSIS
        parser.add_argument(
            "--columns",
            help="Comma-separated state columns (e.g. x,y,z) used directly as points, without embedding.",
        )
        parser.add_argument("--m", type=int, default=defaults["M"])
        parser.add_argument("--tau", type=int, default=defaults["TAU"])
        parser.add_argument("--eps", type=float, default=defaults["EPSILON"])
        parser.add_argument("--norm", choices=[norm.value for norm in Norm], default=defaults["NORM"])
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        with self.reporting_errors():
            if options.get("columns"):
                names = [name.strip() for name in options["columns"].split(",") if name.strip()]
                table = read_columns(options["input"], names)
                points = np.column_stack([table[name] for name in names])
                window = self.window(options, points.shape[0])
                if window is not None:
                    end = window.offset_samples + window.length_samples
                    if end > points.shape[0]:
                        raise WindowBoundsError(
                            offset=window.offset_samples, length=window.length_samples, available=points.shape[0]
                        )
                    points = points[window.offset_samples : end]
                R = recurrence_matrix_from_points(points, options["eps"], options["norm"])
            else:
                series = self.load_series(options)
                params = EmbeddingParams(dimension_m=options["m"], delay_tau=options["tau"])
                R = recurrence_matrix(utde_embed(series, params), options["eps"], options["norm"])
            write_pgm(R, options["out"])
