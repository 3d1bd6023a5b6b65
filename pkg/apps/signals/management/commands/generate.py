from __future__ import annotations

from apps.core.commands import AnalysisCommand
from apps.core.csvio import write_rows

from ...forms import GenerateForm
from ...services import generate, gen_lorenz_states


class Command(AnalysisCommand):
    help = "Generate a deterministic reference signal as CSV (index,value)."

    def add_arguments(self, parser):
        parser.add_argument("--system", required=True)
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--out", required=True)
        parser.add_argument("--x0", type=float, help="Logistic map start value in (0, 1).")
        parser.add_argument("--dt", type=float, help="Lorenz integration step in seconds.")
        parser.add_argument("--transient", type=int, help="Lorenz transient steps to discard.")
        parser.add_argument("--states", action="store_true", help="Write Lorenz x,y,z states.")

    def handle(self, *args, **options):
        form = GenerateForm(
            data={
                "system": options["system"],
                "n": options["n"],
                "seed": options["seed"],
                "x0": options.get("x0"),
                "dt": options.get("dt"),
                "transient": options.get("transient"),
                "states": options.get("states") or False,
            }
        )
        data = self.validated(form)
        with self.reporting_errors():
            if data["states"]:
                states = gen_lorenz_states(form.lorenz_params(), data["n"])
                rows = ((idx, *state) for idx, state in enumerate(states))
                write_rows(options["out"], ["index", "x", "y", "z"], rows)
                return
            series = generate(
                data["system"],
                data["n"],
                data["seed"] or 0,
                params=form.lorenz_params(),
                x0=data["x0"],
            )
            write_rows(options["out"], ["index", "value"], enumerate(series.samples))
