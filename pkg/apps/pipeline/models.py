from __future__ import annotations

from dataclasses import dataclass, fields

from django.conf import settings
from django.db import models

from apps.core.exceptions import RecordingParseError
from apps.preprocess.models import WindowSpec
from apps.signals.models import TimeSeries


class Channel(models.TextChoices):
    ACC_X = "AccX", "Accelerometer x"
    ACC_Y = "AccY", "Accelerometer y"
    ACC_Z = "AccZ", "Accelerometer z"
    GYRO_X = "GyroX", "Gyroscope x"
    GYRO_Y = "GyroY", "Gyroscope y"
    GYRO_Z = "GyroZ", "Gyroscope z"


class Activity(models.TextChoices):
    HN = "HN", "Horizontal arm movement, normal speed"
    HF = "HF", "Horizontal arm movement, faster speed"
    VN = "VN", "Vertical arm movement, normal speed"
    VF = "VF", "Vertical arm movement, faster speed"


class Smoothness(models.TextChoices):
    SG0 = "sg0", "z-scored"
    SG1 = "sg1", "z-scored, Savitzky-Golay p=5 n=29"
    SG2 = "sg2", "z-scored, Savitzky-Golay p=5 n=159"


class Mode(models.TextChoices):
    FIXED = "fixed", "Fixed embedding parameters"
    ESTIMATE = "estimate", "Per-series Cao/AMI estimation"


DEFAULT_SCHEMA: dict[str, str] = {
    Channel.ACC_X.value: "acc_x",
    Channel.ACC_Y.value: "acc_y",
    Channel.ACC_Z.value: "acc_z",
    Channel.GYRO_X.value: "gyro_x",
    Channel.GYRO_Y.value: "gyro_y",
    Channel.GYRO_Z.value: "gyro_z",
}


def default_axis(activity: str) -> str:
    """Horizontal movements are read on GyroZ, vertical ones on GyroY."""
    return Channel.GYRO_Z.value if activity in (Activity.HN, Activity.HF) else Channel.GYRO_Y.value


@dataclass(frozen=True)
class ImuRecording:
    accel: tuple[TimeSeries, TimeSeries, TimeSeries]
    gyro: tuple[TimeSeries, TimeSeries, TimeSeries]
    sample_rate_hz: float

    def __post_init__(self) -> None:
        lengths = {len(series) for series in (*self.accel, *self.gyro)}
        if len(lengths) != 1:
            raise RecordingParseError(f"Channel lengths differ: {sorted(lengths)}")
        rates = {series.sample_rate_hz for series in (*self.accel, *self.gyro)}
        if rates != {self.sample_rate_hz}:
            raise RecordingParseError(f"Channel sample rates differ: {sorted(rates)}")

    def __len__(self) -> int:
        return len(self.accel[0])

    def channel(self, name: str) -> TimeSeries:
        order = [choice.value for choice in Channel]
        if name not in order:
            raise RecordingParseError(f"Unknown channel {name!r}", column=name)
        idx = order.index(name)
        return self.accel[idx] if idx < 3 else self.gyro[idx - 3]


@dataclass(frozen=True)
class SessionMeta:
    participant_id: str
    sensor_id: str
    activity: str
    axis: str
    smoothness: str
    window: WindowSpec | None = None


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    meta: SessionMeta
    line: int = 0
    label: str = ""


@dataclass(frozen=True)
class AnalysisConfig:
    m: int
    tau: int
    eps: float
    norm: str
    dmin: int
    bins: int
    plateau: float
    mode: str
    m_max: int
    tau_max: int
    workers: int

    @classmethod
    def from_settings(cls) -> AnalysisConfig:
        defaults = settings.ANALYSIS
        return cls(
            m=defaults["M"],
            tau=defaults["TAU"],
            eps=defaults["EPSILON"],
            norm=defaults["NORM"],
            dmin=defaults["D_MIN"],
            bins=defaults["AMI_BINS"],
            plateau=defaults["PLATEAU_BAND"],
            mode=defaults["MODE"],
            m_max=defaults["M_MAX"],
            tau_max=defaults["TAU_MAX"],
            workers=defaults["BATCH_WORKERS"],
        )

    def as_data(self) -> dict[str, object]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


ENTRY = "entry"
CONSENSUS = "consensus"


@dataclass(frozen=True)
class BatchRow:
    kind: str
    path: str
    participant: str = ""
    sensor: str = ""
    activity: str = ""
    axis: str = ""
    smoothness: str = ""
    window_offset: int | None = None
    window_length: int | None = None
    mode: str = ""
    m: int | None = None
    tau: int | None = None
    eps: float | None = None
    norm: str = ""
    dmin: int | None = None
    rec: float | None = None
    det: float | None = None
    ratio: float | None = None
    ent: float | None = None
    error: str = ""

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def values(self) -> list[object]:
        return [getattr(self, f.name) for f in fields(self)]

    @property
    def failed(self) -> bool:
        return bool(self.error)
