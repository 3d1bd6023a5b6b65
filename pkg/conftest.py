"""
Shared signals and file builders for the app test suites.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np
import pytest

from apps.signals.models import LorenzParams, TimeSeries
from apps.signals.services import gen_gaussian_noise, gen_lorenz_states, gen_lorenz_x

IMU_COLUMNS = ("acc_x", "acc_y", "acc_z", "gyro_x", "gyro_y", "gyro_z")


@pytest.fixture(scope="session")
def lorenz_x() -> TimeSeries:
    """Lorenz x at rho=28, sigma=10, beta=8/3, dt=0.01 after a 1000-step transient."""
    return gen_lorenz_x(LorenzParams(), 5000)


@pytest.fixture(scope="session")
def lorenz_states() -> np.ndarray:
    return gen_lorenz_states(LorenzParams(), 300)


@pytest.fixture(scope="session")
def noise() -> TimeSeries:
    return gen_gaussian_noise(1, 5000)


@pytest.fixture
def sine() -> TimeSeries:
    """Exactly 40 samples per period; a quarter period is 10 samples."""
    n = np.arange(400)
    return TimeSeries(np.sin(2 * np.pi * n / 40.0), 1.0, "sine")


def _write(path: Path, header, rows) -> Path:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


@pytest.fixture
def series_csv(tmp_path):
    def make(values, name: str = "series.csv", column: str = "value") -> Path:
        rows = [[idx, repr(float(v))] for idx, v in enumerate(values)]
        return _write(tmp_path / name, ["index", column], rows)

    return make


@pytest.fixture
def recording_csv(tmp_path):
    """Six-channel IMU-style CSV with smooth periodic motion plus seeded noise."""

    def make(name: str = "rec.csv", n: int = 300, seed: int = 0, columns=IMU_COLUMNS, header=None) -> Path:
        rng = np.random.default_rng(seed)
        t = np.arange(n, dtype=float)
        data = {
            "acc_x": np.sin(t / 7.0),
            "acc_y": np.cos(t / 11.0),
            "acc_z": 1.0 + 0.1 * np.sin(t / 5.0),
            "gyro_x": np.sin(t / 13.0) * np.cos(t / 3.0),
            "gyro_y": np.sin(t / 9.0 + seed),
            "gyro_z": np.sin(t / 6.0 + 0.5 * seed),
        }
        table = {key: value + 0.05 * rng.standard_normal(n) for key, value in data.items()}
        rows = [[repr(float(table[col][i])) for col in columns] for i in range(n)]
        return _write(tmp_path / name, list(header or columns), rows)

    return make


@pytest.fixture
def manifest_csv(tmp_path):
    header = [
        "path",
        "participant",
        "sensor",
        "activity",
        "axis",
        "smoothness",
        "window_offset",
        "window_length",
    ]

    def make(rows, name: str = "manifest.csv") -> Path:
        return _write(tmp_path / name, header, rows)

    return make
