import numpy as np
import pytest

from apps.core.exceptions import ConfigurationError, RecordingParseError
from apps.embedding.models import EmbeddingParams
from apps.pipeline import services
from apps.pipeline.models import CONSENSUS, ENTRY, BatchRow, Channel, Mode, default_axis
from apps.pipeline.services import (
    build_config,
    load_config,
    load_manifest,
    load_recording,
    parse_config_text,
    run_batch,
    summarize,
    summary_header,
)
from apps.preprocess.models import WindowSpec
from apps.preprocess.services import prepare_series
from apps.rqa.services import rqa_all


def corrupt(path, data_row: int, value: str = "abc"):
    lines = path.read_text(encoding="utf-8").splitlines()
    cells = lines[data_row].split(",")
    cells[-1] = value
    lines[data_row] = ",".join(cells)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_load_recording(recording_csv):
    recording = load_recording(recording_csv(n=120))
    assert len(recording) == 120
    assert recording.sample_rate_hz == 50.0
    assert len(recording.channel(Channel.GYRO_Z)) == 120
    with pytest.raises(RecordingParseError):
        recording.channel("Magnetometer")


def test_load_recording_with_schema(tmp_path, recording_csv):
    path = recording_csv(header=("acc_x", "acc_y", "acc_z", "gyro_x", "gyro_y", "gz"))
    recording = load_recording(path, schema={"GyroZ": "gz"})
    assert len(recording.channel("GyroZ")) == 300


def test_load_recording_missing_channel(recording_csv):
    path = recording_csv(columns=("acc_x", "acc_y", "acc_z", "gyro_x", "gyro_y"))
    with pytest.raises(RecordingParseError) as exc:
        load_recording(path)
    assert exc.value.column == "gyro_z"


def test_load_recording_text_cell(recording_csv):
    path = corrupt(recording_csv(n=50), data_row=3)
    with pytest.raises(RecordingParseError) as exc:
        load_recording(path)
    assert exc.value.line == 4


def test_default_axis():
    assert default_axis("HN") == "GyroZ"
    assert default_axis("HF") == "GyroZ"
    assert default_axis("VN") == "GyroY"
    assert default_axis("VF") == "GyroY"


def test_load_manifest(tmp_path, manifest_csv):
    path = manifest_csv(
        [
            ["rec.csv", "p01", "HS01", "HN", "", "sg1", "", "250"],
            ["/data/other.csv", "p02", "RS01", "VF", "AccX", "sg0", "5", "100"],
            ["third.csv", "p03", "HS01", "VN", "", "sg2", "", ""],
        ]
    )
    first, second, third = load_manifest(path)
    assert first.path == str(tmp_path / "rec.csv")
    assert first.label == "rec.csv"
    assert first.meta.axis == "GyroZ"
    assert first.meta.window == WindowSpec(length_samples=250, offset_samples=0)
    assert first.line == 2
    assert second.path == "/data/other.csv"
    assert second.meta.axis == "AccX"
    assert second.meta.window == WindowSpec(length_samples=100, offset_samples=5)
    assert third.meta.window is None
    assert third.meta.axis == "GyroY"


@pytest.mark.parametrize(
    "row",
    [
        ["rec.csv", "p01", "HS01", "XX", "", "sg1", "", ""],
        ["rec.csv", "p 01", "HS01", "HN", "", "sg1", "", ""],
        ["rec.csv", "p01", "HS01", "HN", "", "sg7", "", ""],
        ["rec.csv", "p01", "HS01", "HN", "", "sg1", "10", ""],
        ["rec.csv", "p01", "HS01", "HN", "", "sg1", "", "-3"],
    ],
)
def test_load_manifest_rejects_rows(manifest_csv, row):
    good = ["ok.csv", "p00", "HS01", "HN", "", "sg0", "", ""]
    with pytest.raises(RecordingParseError) as exc:
        load_manifest(manifest_csv([good, row]))
    assert exc.value.line == 3


def test_load_manifest_with_byte_order_mark(manifest_csv):
    path = manifest_csv([["rec.csv", "p01", "HS01", "HN", "", "sg0", "", ""]])
    path.write_bytes(b"\xef\xbb\xbf" + path.read_bytes())
    (entry,) = load_manifest(path)
    assert entry.meta.participant_id == "p01"


def test_load_manifest_requires_columns(tmp_path):
    path = tmp_path / "manifest.csv"
    path.write_text("path,participant\nrec.csv,p01\n", encoding="utf-8")
    with pytest.raises(RecordingParseError):
        load_manifest(path)


def test_parse_config_text():
    text = "# analysis\nm = 4\n\nEPS=0.8  # threshold\nnorm=maximum\n"
    assert parse_config_text(text) == {"m": "4", "eps": "0.8", "norm": "maximum"}
    with pytest.raises(ConfigurationError):
        parse_config_text("m 4")


def test_config_defaults_follow_settings(settings):
    settings.ANALYSIS = {**settings.ANALYSIS, "M": 4, "EPSILON": 2.5}
    config = load_config()
    assert (config.m, config.eps) == (4, 2.5)
    assert config.mode == Mode.FIXED


def test_config_file(tmp_path):
    path = tmp_path / "analysis.cfg"
    path.write_text("mode=estimate\ntau_max=30\nworkers=2\n", encoding="utf-8")
    config = load_config(path)
    assert (config.mode, config.tau_max, config.workers) == ("estimate", 30, 2)


@pytest.mark.parametrize(
    "overrides",
    [{"window": "5"}, {"eps": "0"}, {"norm": "cosine"}, {"mode": "guess"}, {"bins": "1"}, {"m": "zero"}],
)
def test_config_rejects_values(overrides):
    with pytest.raises(ConfigurationError):
        build_config(overrides)


def test_config_missing_file(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(tmp_path / "missing.cfg")


def test_fixed_batch_matches_single_analysis(tmp_path, recording_csv, manifest_csv):
    recording_csv("a.csv", seed=1)
    recording_csv("b.csv", seed=2)
    manifest = load_manifest(
        manifest_csv(
            [
                ["a.csv", "p01", "HS01", "HN", "", "sg1", "10", "250"],
                ["b.csv", "p02", "RS01", "VF", "", "sg0", "", "200"],
            ]
        )
    )
    config = build_config({"m": 3, "tau": 4, "eps": 0.8})
    result = run_batch(manifest, config)
    assert result.failures == 0
    assert [row.kind for row in result.rows] == [ENTRY, ENTRY]

    for entry, row in zip(manifest, result.rows):
        channel = load_recording(entry.path).channel(entry.meta.axis)
        series = prepare_series(channel, entry.meta.smoothness, entry.meta.window)
        expected = rqa_all(series, EmbeddingParams(3, 4), 0.8)
        assert (row.rec, row.det, row.ratio, row.ent) == (expected.rec, expected.det, expected.ratio, expected.ent)
        assert (row.m, row.tau, row.eps, row.norm) == (3, 4, 0.8, "euclidean")
    assert result.rows[0].window_offset == 10
    assert result.rows[1].axis == "GyroY"


def test_batch_reports_failures_in_place(recording_csv, manifest_csv):
    recording_csv("a.csv", seed=1)
    corrupt(recording_csv("b.csv", seed=2), data_row=7)
    recording_csv("c.csv", n=40, seed=3)
    manifest = load_manifest(
        manifest_csv(
            [
                ["a.csv", "p01", "HS01", "HN", "", "sg0", "", ""],
                ["b.csv", "p02", "HS01", "HN", "", "sg0", "", ""],
                ["c.csv", "p03", "HS01", "HN", "", "sg0", "", ""],
                ["missing.csv", "p04", "HS01", "HN", "", "sg0", "", ""],
            ]
        )
    )
    result = run_batch(manifest, build_config())
    assert result.failures == 3
    first, second, third, fourth = result.rows
    assert not first.failed and first.rec is not None
    assert "line 8" in second.error
    assert second.rec is None and second.m == 6
    assert "requires at least" in third.error
    assert "not found" in fourth.error


def test_workers_keep_manifest_order(recording_csv, manifest_csv):
    rows = []
    for idx in range(5):
        recording_csv(f"r{idx}.csv", seed=idx)
        rows.append([f"r{idx}.csv", f"p{idx}", "HS01", "VN", "", "sg1", "", ""])
    manifest = load_manifest(manifest_csv(rows))
    serial = run_batch(manifest, build_config({"workers": 1}))
    threaded = run_batch(manifest, build_config({"workers": 3}))
    assert [row.values() for row in serial.rows] == [row.values() for row in threaded.rows]


def test_estimate_mode_appends_consensus(monkeypatch, recording_csv, manifest_csv):
    chosen = {"a": EmbeddingParams(3, 10), "b": EmbeddingParams(4, 12), "c": EmbeddingParams(5, 14)}

    def fake_estimate(series, **kwargs):
        stem = series.label.split("zmuv", 1)[1].split(":", 1)[0]
        return chosen[stem]

    monkeypatch.setattr(services, "estimate_params", fake_estimate)
    for stem in chosen:
        recording_csv(f"{stem}.csv", seed=ord(stem))
    manifest = load_manifest(
        manifest_csv([[f"{stem}.csv", f"p{stem}", "HS01", "HF", "", "sg0", "", "250"] for stem in chosen])
    )
    result = run_batch(manifest, build_config({"mode": "estimate"}))
    assert result.estimated == list(chosen.values())
    assert [(row.m, row.tau) for row in result.rows[:3]] == [(3, 10), (4, 12), (5, 14)]
    consensus = result.rows[-1]
    assert consensus.kind == CONSENSUS
    assert (consensus.m, consensus.tau) == (4, 12)
    assert consensus.rec is None


def test_summarize_groups():
    def row(rec, sensor="HS01", **kw):
        return BatchRow(kind=ENTRY, path="x.csv", sensor=sensor, activity="HN", smoothness="sg0",
                        window_length=250, rec=rec, det=rec, ratio=1.0, ent=0.5, **kw)

    rows = [row(0.1), row(0.2), row(0.3), row(0.4), row(0.9, sensor="RS01"), row(None, error="boom"),
            BatchRow(kind=CONSENSUS, path="", m=4, tau=12)]
    table = summarize(rows)
    assert summary_header()[-7:] == ["metric", "count", "min", "q1", "median", "q3", "max"]
    hs_rec = table[0]
    assert hs_rec[:5] == ["HS01", "HN", "sg0", 250, "rec"]
    assert hs_rec[5] == 4
    np.testing.assert_allclose(hs_rec[6:], [0.1, 0.175, 0.25, 0.325, 0.4])
    assert len(table) == 8
    assert table[4][0] == "RS01" and table[4][5] == 1
