from __future__ import annotations

from django.conf import settings

from apps.core.csvio import format_cell, write_rows
from apps.embedding.models import EmbeddingParams
from apps.embedding.services import utde_embed
from apps.preprocess.commands import SeriesInputCommand

from ...services import pca_project


class Command(SeriesInputCommand):
    help = "Reconstructed state space: delay embedding rotated onto its first three principal axes."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--m", type=int, default=settings.ANALYSIS["M"])
        parser.add_argument("--tau", type=int, default=settings.ANALYSIS["TAU"])
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        with self.reporting_errors():
            series = self.load_series(options)
            params = EmbeddingParams(dimension_m=options["m"], delay_tau=options["tau"])
            trajectory = pca_project(utde_embed(series, params), k=3)
            variances = " ".join(format_cell(value) for value in trajectory.explained_variance)
            write_rows(
                options["out"],
                ["index", "c1", "c2", "c3"],
                ((idx, *point) for idx, point in enumerate(trajectory.points)),
                comments=[f"explained_variance {variances}"],
            )
