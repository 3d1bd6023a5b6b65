"""
Django settings for Recurrence Platform.

"""

from __future__ import annotations

import os
from pathlib import Path


"""
Paths
"""

BASE_DIR = Path(__file__).resolve().parent.parent


"""
Environment helpers
"""


def _env(key: str, default: str | None = None) -> str:
    value = os.getenv(key, default)
    if value is None:
        raise RuntimeError(f"Missing required environment variable: {key}")
    return value


def _env_bool(key: str, default: str = "0") -> bool:
    return _env(key, default).strip().lower() in {"1", "true", "yes", "y", "on"}


def _env_list(key: str, default: str = "") -> list[str]:
    raw = _env(key, default)
    return [item.strip() for item in raw.split(",") if item.strip()]


def _env_int(key: str, default: str) -> int:
    raw = _env(key, default)
    try:
        return int(raw)
    except ValueError as exc:
        raise RuntimeError(f"Environment variable {key} must be an integer, got {raw!r}") from exc


def _env_float(key: str, default: str) -> float:
    raw = _env(key, default)
    try:
        return float(raw)
    except ValueError as exc:
        raise RuntimeError(f"Environment variable {key} must be a number, got {raw!r}") from exc


"""
Core
"""

SECRET_KEY = _env("DJANGO_SECRET_KEY", "dev-only-change-me")
DEBUG = _env_bool("DJANGO_DEBUG", "0")
ALLOWED_HOSTS = _env_list("DJANGO_ALLOWED_HOSTS", "")


"""
Applications
"""

LOCAL_APPS = [
    "apps.core",
    "apps.signals",
    "apps.preprocess",
    "apps.embedding",
    "apps.rqa",
    "apps.projection",
    "apps.pipeline",
]

INSTALLED_APPS = LOCAL_APPS


"""
Database

Nothing is persisted: every analysis is a pure function of its input files.
"""

DATABASES: dict = {}


"""
Analysis defaults
"""

ANALYSIS = {
    "M": _env_int("RQA_EMBEDDING_DIMENSION", "6"),
    "TAU": _env_int("RQA_EMBEDDING_DELAY", "8"),
    "EPSILON": _env_float("RQA_THRESHOLD", "1.0"),
    "NORM": _env("RQA_NORM", "euclidean"),
    "D_MIN": _env_int("RQA_D_MIN", "2"),
    "AMI_BINS": _env_int("RQA_AMI_BINS", "16"),
    "PLATEAU_BAND": _env_float("RQA_PLATEAU_BAND", "0.05"),
    "MODE": _env("RQA_MODE", "fixed"),
    "M_MAX": _env_int("RQA_M_MAX", "12"),
    "TAU_MAX": _env_int("RQA_TAU_MAX", "40"),
    "BATCH_WORKERS": _env_int("RQA_BATCH_WORKERS", "1"),
    "SAMPLE_RATE_HZ": _env_float("RQA_SAMPLE_RATE_HZ", "50.0"),
}


"""
Internationalization / Time
"""

LANGUAGE_CODE = _env("DJANGO_LANGUAGE_CODE", "en-us")
TIME_ZONE = _env("TIME_ZONE", "Europe/Berlin")
USE_I18N = False
USE_TZ = True


"""
Logging
"""

LOG_LEVEL = _env("DJANGO_LOG_LEVEL", "INFO").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {"format": "%(asctime)s %(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "plain"},
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": _env("RQA_LOG_LEVEL", LOG_LEVEL).upper(),
            "propagate": False,
        },
    },
    "root": {"handlers": ["console"], "level": LOG_LEVEL},
}
