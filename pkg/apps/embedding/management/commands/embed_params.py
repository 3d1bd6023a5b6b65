from __future__ import annotations

from django.conf import settings

from apps.core.csvio import write_rows
from apps.core.forms import parse_int_range
from apps.preprocess.commands import SeriesInputCommand

from ...services import ami_curve, cao_diagnostic, estimate_params

HEADER = ["kind", "tau", "m", "e1", "e2", "ami_bits"]


class Command(SeriesInputCommand):
    help = "Cao E1/E2 curves over a range of delays, the AMI curve, and the selected (m0, tau0)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        defaults = settings.ANALYSIS
        parser.add_argument("--m-max", type=int, default=defaults["M_MAX"])
        parser.add_argument("--tau-max", type=int, default=defaults["TAU_MAX"])
        parser.add_argument("--bins", type=int, default=defaults["AMI_BINS"])
        parser.add_argument("--plateau", type=float, default=defaults["PLATEAU_BAND"])
        parser.add_argument("--cao-taus", default="1:20", help="Delays for the Cao diagnostic, e.g. 1:20.")
        parser.add_argument("--out", required=True)

    def handle(self, *args, **options):
        with self.reporting_errors():
            series = self.load_series(options)
            cao = cao_diagnostic(series, parse_int_range(options["cao_taus"]), options["m_max"])
            ami = ami_curve(series, options["tau_max"], options["bins"])
            chosen = estimate_params(
                series,
                tau_max=options["tau_max"],
                m_max=options["m_max"],
                bins=options["bins"],
                plateau_band=options["plateau"],
            )

            rows: list[list] = []
            for tau, curves in cao.items():
                for idx in range(curves.m_max):
                    rows.append(["cao", tau, idx + 1, curves.e1[idx], curves.e2[idx], None])
            for tau, bits in enumerate(ami.values_bits):
                rows.append(["ami", tau, None, None, None, bits])
            rows.append(["summary", chosen.delay_tau, chosen.dimension_m, None, None, None])
            write_rows(options["out"], HEADER, rows)

        self.stdout.write(f"m0={chosen.dimension_m} tau0={chosen.delay_tau}")
