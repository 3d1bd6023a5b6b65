from __future__ import annotations

import csv
import logging
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from django.conf import settings

from apps.core.csvio import read_columns
from apps.core.exceptions import ConfigurationError, RecordingParseError
from apps.embedding.models import EmbeddingParams
from apps.embedding.services import consensus_params, estimate_params
from apps.preprocess.models import WindowSpec
from apps.preprocess.services import prepare_series
from apps.rqa.services import rqa_all
from apps.signals.models import TimeSeries

from .forms import AnalysisConfigForm, ManifestEntryForm
from .models import (
    CONSENSUS,
    DEFAULT_SCHEMA,
    ENTRY,
    AnalysisConfig,
    BatchRow,
    Channel,
    ImuRecording,
    ManifestEntry,
    Mode,
    SessionMeta,
)

logger = logging.getLogger(__name__)

MANIFEST_COLUMNS = (
    "path",
    "participant",
    "sensor",
    "activity",
    "axis",
    "smoothness",
    "window_offset",
    "window_length",
)
METRICS = ("rec", "det", "ratio", "ent")
DEFAULT_GROUPING = ("sensor", "activity", "smoothness", "window_length")


def _form_errors(form) -> str:
    return "; ".join(f"{field}: {' '.join(messages)}" for field, messages in form.errors.items())


def load_recording(
    path: str | Path,
    schema: Mapping[str, str] | None = None,
    sample_rate_hz: float | None = None,
) -> ImuRecording:
    """Read the six accelerometer/gyroscope channels of one recording."""
    schema = {**DEFAULT_SCHEMA, **(schema or {})}
    rate = sample_rate_hz or settings.ANALYSIS["SAMPLE_RATE_HZ"]
    order = [choice.value for choice in Channel]
    columns = read_columns(path, [schema[name] for name in order])
    label = Path(path).stem
    channels = [TimeSeries(columns[schema[name]], rate, f"{label}:{name}") for name in order]
    return ImuRecording(accel=tuple(channels[:3]), gyro=tuple(channels[3:]), sample_rate_hz=rate)


def load_manifest(path: str | Path) -> list[ManifestEntry]:
    """Validated manifest entries; relative recording paths resolve against the manifest's folder."""
    path = Path(path)
    if not path.is_file():
        raise RecordingParseError(f"Manifest not found: {path}")
    entries: list[ManifestEntry] = []
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.DictReader(fh)
        missing = [name for name in MANIFEST_COLUMNS if name not in (reader.fieldnames or [])]
        if missing:
            raise RecordingParseError(f"Manifest has no column {missing[0]!r}", line=1, column=missing[0])
        for record in reader:
            form = ManifestEntryForm(data={name: (record.get(name) or "").strip() for name in MANIFEST_COLUMNS})
            if not form.is_valid():
                raise RecordingParseError(_form_errors(form), line=reader.line_num)
            data = form.cleaned_data
            window = None
            if data["window_length"] is not None:
                window = WindowSpec(length_samples=data["window_length"], offset_samples=data["window_offset"])
            elif data["window_offset"]:
                raise RecordingParseError("window_offset needs a window_length", line=reader.line_num)
            recording = Path(data["path"])
            if not recording.is_absolute():
                recording = path.parent / recording
            meta = SessionMeta(
                participant_id=data["participant"],
                sensor_id=data["sensor"],
                activity=data["activity"],
                axis=data["axis"],
                smoothness=data["smoothness"],
                window=window,
            )
            entries.append(
                ManifestEntry(path=str(recording), meta=meta, line=reader.line_num, label=data["path"])
            )
    if not entries:
        raise RecordingParseError(f"Manifest {path} lists no recordings", line=2)
    return entries


def parse_config_text(text: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigurationError(f"line {number}: expected key=value, got {raw.strip()!r}")
        values[key.strip().lower()] = value.strip()
    return values


def build_config(overrides: Mapping[str, object] | None = None) -> AnalysisConfig:
    base = AnalysisConfig.from_settings().as_data()
    unknown = sorted(set(overrides or {}) - set(base))
    if unknown:
        raise ConfigurationError(f"Unknown configuration key {unknown[0]!r}")
    form = AnalysisConfigForm(data={**base, **(overrides or {})})
    if not form.is_valid():
        raise ConfigurationError(_form_errors(form))
    return AnalysisConfig(**form.cleaned_data)


def load_config(path: str | Path | None = None) -> AnalysisConfig:
    if path is None:
        return build_config()
    path = Path(path)
    if not path.is_file():
        raise ConfigurationError(f"Config file not found: {path}")
    return build_config(parse_config_text(path.read_text(encoding="utf-8-sig")))


@dataclass(frozen=True)
class BatchResult:
    rows: list[BatchRow]
    estimated: list[EmbeddingParams]

    @property
    def failures(self) -> int:
        return sum(1 for row in self.rows if row.failed)


def _meta_fields(entry: ManifestEntry) -> dict[str, object]:
    meta = entry.meta
    return {
        "path": entry.label or entry.path,
        "participant": meta.participant_id,
        "sensor": meta.sensor_id,
        "activity": meta.activity,
        "axis": meta.axis,
        "smoothness": meta.smoothness,
        "window_offset": meta.window.offset_samples if meta.window else None,
        "window_length": meta.window.length_samples if meta.window else None,
    }


def analyse_entry(
    entry: ManifestEntry,
    config: AnalysisConfig,
    *,
    schema: Mapping[str, str] | None = None,
) -> tuple[BatchRow, EmbeddingParams | None]:
    """Axis, window, z-score, smoothness, embedding parameters, RQA: one manifest entry."""
    fields = _meta_fields(entry)
    common = {**fields, "mode": config.mode, "eps": config.eps, "norm": config.norm, "dmin": config.dmin}
    if config.mode == Mode.FIXED:
        common.update(m=config.m, tau=config.tau)
    try:
        recording = load_recording(entry.path, schema)
        series = prepare_series(recording.channel(entry.meta.axis), entry.meta.smoothness, entry.meta.window)
        estimated = None
        if config.mode == Mode.ESTIMATE:
            estimated = estimate_params(
                series,
                tau_max=config.tau_max,
                m_max=config.m_max,
                bins=config.bins,
                plateau_band=config.plateau,
            )
            params = estimated
        else:
            params = EmbeddingParams(dimension_m=config.m, delay_tau=config.tau)
        metrics = rqa_all(series, params, config.eps, config.norm, config.dmin)
    except ValueError as exc:
        logger.warning("Manifest entry %s failed: %s", fields["path"], exc)
        return BatchRow(kind=ENTRY, **common, error=str(exc)), None

    row = BatchRow(
        kind=ENTRY,
        **{**common, "m": params.dimension_m, "tau": params.delay_tau},
        rec=metrics.rec,
        det=metrics.det,
        ratio=metrics.ratio,
        ent=metrics.ent,
    )
    return row, estimated


def run_batch(
    manifest: Sequence[ManifestEntry],
    config: AnalysisConfig,
    *,
    schema: Mapping[str, str] | None = None,
) -> BatchResult:
    """Analyse every manifest entry; rows come back in manifest order whatever the worker count."""
    if not manifest:
        raise ConfigurationError("The manifest is empty.")
    logger.info("Batch of %d entries in %s mode with %d worker(s)", len(manifest), config.mode, config.workers)

    def run(entry: ManifestEntry):
        return analyse_entry(entry, config, schema=schema)

    items = list(manifest)
    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(run, items))
    else:
        outcomes = [run(item) for item in items]

    rows = [row for row, _ in outcomes]
    estimated = [params for _, params in outcomes if params is not None]
    if config.mode == Mode.ESTIMATE and estimated:
        consensus = consensus_params(estimated)
        rows.append(
            BatchRow(
                kind=CONSENSUS,
                path="",
                mode=config.mode,
                m=consensus.dimension_m,
                tau=consensus.delay_tau,
            )
        )
    result = BatchResult(rows=rows, estimated=estimated)
    logger.info("Batch finished: %d rows, %d failed", len(rows), result.failures)
    return result


SUMMARY_STATS = ("count", "min", "q1", "median", "q3", "max")


def summarize(rows: Iterable[BatchRow], by: Sequence[str] = DEFAULT_GROUPING) -> list[list[object]]:
    """Five-number summaries of each metric per group of metadata factors."""
    groups: dict[tuple, dict[str, list[float]]] = {}
    for row in rows:
        if row.kind != ENTRY or row.failed:
            continue
        key = tuple(getattr(row, name) for name in by)
        bucket = groups.setdefault(key, {metric: [] for metric in METRICS})
        for metric in METRICS:
            value = getattr(row, metric)
            if value is not None:
                bucket[metric].append(value)

    out: list[list[object]] = []
    for key in sorted(groups, key=lambda k: tuple("" if v is None else str(v) for v in k)):
        for metric in METRICS:
            values = np.asarray(groups[key][metric], dtype=float)
            if values.size == 0:
                out.append([*key, metric, 0, None, None, None, None, None])
                continue
            q1, median, q3 = np.percentile(values, [25, 50, 75])
            out.append([*key, metric, int(values.size), values.min(), q1, median, q3, values.max()])
    return out


def summary_header(by: Sequence[str] = DEFAULT_GROUPING) -> list[str]:
    return [*by, "metric", *SUMMARY_STATS]
