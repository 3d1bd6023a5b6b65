import csv

import numpy as np
import pytest
from django.core.management import CommandError, call_command

from apps.embedding.services import cao_curves, estimate_params
from apps.signals.models import TimeSeries


def noisy_sine(n: int = 600) -> np.ndarray:
    rng = np.random.default_rng(11)
    return np.sin(2 * np.pi * np.arange(n) / 37.0) + 0.1 * rng.standard_normal(n)


def test_embed_params_rows(tmp_path, series_csv):
    values = noisy_sine()
    out = tmp_path / "params.csv"
    call_command(
        "embed_params",
        input=str(series_csv(values)),
        m_max=5,
        tau_max=12,
        bins=8,
        cao_taus="1:3",
        out=str(out),
    )
    with open(out, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))

    cao = [row for row in rows if row["kind"] == "cao"]
    ami = [row for row in rows if row["kind"] == "ami"]
    summary = [row for row in rows if row["kind"] == "summary"]
    assert len(cao) == 15
    assert [row["tau"] for row in ami] == [str(tau) for tau in range(13)]
    assert len(summary) == 1

    series = TimeSeries(values, 50.0, "series")
    curves = cao_curves(series, 2, 5)
    at_tau2 = [row for row in cao if row["tau"] == "2"]
    np.testing.assert_allclose([float(row["e1"]) for row in at_tau2], curves.e1, rtol=1e-12)

    chosen = estimate_params(series, tau_max=12, m_max=5, bins=8)
    assert (summary[0]["m"], summary[0]["tau"]) == (str(chosen.dimension_m), str(chosen.delay_tau))


def test_embed_params_too_short(tmp_path, series_csv):
    with pytest.raises(CommandError) as exc:
        call_command("embed_params", input=str(series_csv(noisy_sine(30))), out=str(tmp_path / "p.csv"))
    assert exc.value.returncode == 2
