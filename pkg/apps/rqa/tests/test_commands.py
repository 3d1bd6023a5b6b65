import csv
from pathlib import Path

import numpy as np
import pytest
from django.core.management import CommandError, call_command

from apps.core.csvio import read_columns, write_rows
from apps.embedding.models import EmbeddingParams
from apps.rqa.export import encode_pgm
from apps.rqa.models import Norm, RecurrenceMatrix
from apps.rqa.services import rqa_all
from apps.signals.models import TimeSeries
from apps.signals.services import gen_gaussian_noise, gen_harmonic

GOLDEN = Path(__file__).parent / "golden"


def read_table(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_encode_pgm_flips_rows():
    bits = np.array([[1, 1, 0], [1, 1, 0], [0, 0, 1]], dtype=bool)
    data = encode_pgm(RecurrenceMatrix(bits=bits, epsilon=1.0, norm_id=Norm.EUCLIDEAN))
    assert data == b"P5\n3 3\n255\n" + bytes([255, 255, 0, 0, 0, 255, 0, 0, 255])


def test_rqa_command_rows(tmp_path, series_csv):
    first = series_csv(gen_harmonic(300).samples, name="harmonic.csv")
    second = series_csv(gen_gaussian_noise(4, 300).samples, name="noise.csv")
    out = tmp_path / "metrics.csv"
    call_command("rqa", input=[str(first), str(second)], m=3, tau=4, eps=0.5, out=str(out))

    table = read_table(out)
    assert table[0] == ["file", "m", "tau", "eps", "rec", "det", "ratio", "ent"]
    assert [row[0] for row in table[1:]] == ["harmonic.csv", "noise.csv"]
    expected = rqa_all(TimeSeries(gen_harmonic(300).samples, 50.0), EmbeddingParams(3, 4), 0.5)
    assert float(table[1][4]) == expected.rec
    assert float(table[1][5]) == expected.det
    assert float(table[1][7]) == expected.ent


def test_rqa_command_rejects_bad_norm(tmp_path, series_csv):
    source = series_csv(gen_harmonic(100).samples)
    with pytest.raises(CommandError) as exc:
        call_command("rqa", input=[str(source)], norm="cosine", out=str(tmp_path / "o.csv"))
    assert exc.value.returncode == 2


def test_sweep_command_is_reproducible(tmp_path, series_csv):
    source = series_csv(gen_harmonic(500).samples)
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    call_command("sweep", input=str(source), smooth="sg0", out=str(first))
    call_command("sweep", input=str(source), smooth="sg0", out=str(second), workers=2)
    table = read_table(first)
    assert table[0] == ["m", "tau", "eps", "rec", "det", "ratio", "ent"]
    assert len(table) == 2901
    assert first.read_bytes() == second.read_bytes()


def test_sweep_command_rejects_bad_range(tmp_path, series_csv):
    source = series_csv(gen_harmonic(100).samples)
    with pytest.raises(CommandError) as exc:
        call_command("sweep", input=str(source), eps="3.0:0.2:0.1", out=str(tmp_path / "o.csv"))
    assert exc.value.returncode == 2


def test_rp_export_state_columns(tmp_path, lorenz_states):
    source = tmp_path / "states.csv"
    with source.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["index", "x", "y", "z"])
        for idx, (x, y, z) in enumerate(lorenz_states):
            writer.writerow([idx, repr(float(x)), repr(float(y)), repr(float(z))])
    out = tmp_path / "lorenz.pgm"
    call_command("rp_export", input=str(source), columns="x,y,z", eps=5.0, out=str(out))

    table = read_columns(source, ["x", "y", "z"])
    points = np.column_stack([table["x"], table["y"], table["z"]])
    n = len(points)
    pixels = bytearray()
    for i in reversed(range(n)):
        for j in range(n):
            pixels.append(0 if np.sqrt(np.sum((points[i] - points[j]) ** 2)) <= 5.0 else 255)
    assert out.read_bytes() == f"P5\n{n} {n}\n255\n".encode("ascii") + bytes(pixels)


def test_rp_export_matches_golden_lorenz_plot(tmp_path, lorenz_states):
    source = tmp_path / "states.csv"
    write_rows(source, ["index", "x", "y", "z"], ([idx, *row] for idx, row in enumerate(lorenz_states)))
    out = tmp_path / "lorenz.pgm"
    call_command("rp_export", input=str(source), columns="x,y,z", eps=5.0, out=str(out))
    assert out.read_bytes() == (GOLDEN / "lorenz_eps5.pgm").read_bytes()


def test_rp_export_embedding(tmp_path, series_csv):
    source = series_csv(gen_harmonic(200).samples)
    out = tmp_path / "harmonic.pgm"
    call_command("rp_export", input=str(source), m=2, tau=5, eps=0.3, out=str(out))
    data = out.read_bytes()
    assert data.startswith(b"P5\n195 195\n255\n")
    assert len(data) == len(b"P5\n195 195\n255\n") + 195 * 195


def test_rp_export_window_out_of_bounds(tmp_path, series_csv):
    source = series_csv(gen_harmonic(50).samples)
    with pytest.raises(CommandError):
        call_command("rp_export", input=str(source), columns="value", window_length=80, out=str(tmp_path / "o.pgm"))
