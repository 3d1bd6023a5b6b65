from __future__ import annotations

from django.core.management.base import CommandError

from apps.core.commands import AnalysisCommand
from apps.core.csvio import write_rows
from apps.core.exceptions import ConfigurationError

from ...models import BatchRow, Channel
from ...services import build_config, load_config, load_manifest, run_batch, summarize, summary_header

PARTIAL_FAILURE = 1


def parse_schema(raw: str | None) -> dict[str, str]:
    if not raw:
        return {}
    schema: dict[str, str] = {}
    channels = {choice.value for choice in Channel}
    for item in raw.split(","):
        channel, sep, column = item.partition("=")
        channel, column = channel.strip(), column.strip()
        if not sep or channel not in channels or not column:
            raise ConfigurationError(f"Invalid schema item {item.strip()!r}; use e.g. GyroZ=gz.")
        schema[channel] = column
    return schema


class Command(AnalysisCommand):
    help = "Run the windowing/smoothing/RQA pipeline over every recording listed in a manifest."

    def add_arguments(self, parser):
        parser.add_argument("--manifest", required=True)
        parser.add_argument("--config", help="key=value file: m, tau, eps, norm, dmin, bins, plateau, mode, ...")
        parser.add_argument("--out", required=True)
        parser.add_argument("--summary", help="Optional CSV of per-group five-number summaries.")
        parser.add_argument("--workers", type=int, help="Overrides the configured worker count.")
        parser.add_argument("--schema", help="Channel to column mapping, e.g. GyroY=gy,GyroZ=gz.")

    def handle(self, *args, **options):
        with self.reporting_errors():
            config = load_config(options.get("config"))
            if options.get("workers") is not None:
                config = build_config({**config.as_data(), "workers": options["workers"]})
            manifest = load_manifest(options["manifest"])
            result = run_batch(manifest, config, schema=parse_schema(options.get("schema")))
            write_rows(options["out"], BatchRow.header(), (row.values() for row in result.rows))
            if options.get("summary"):
                write_rows(options["summary"], summary_header(), summarize(result.rows))

        if result.failures:
            raise CommandError(
                f"{result.failures} of {len(manifest)} manifest entries failed; see the error column.",
                returncode=PARTIAL_FAILURE,
            )
        self.stdout.write(f"Analysed {len(manifest)} manifest entries.")
