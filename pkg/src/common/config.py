from __future__ import annotations

import os
from dataclasses import dataclass

from dotenv import load_dotenv

# load environment variables from .env file
load_dotenv()

OUTPUT_FORMATS = ("csv", "json")


@dataclass
class AppConfig:
    # worker processes for sweeps / verify --sweep
    workers: int

    # seed for sampled checks
    seed: int

    # block length of the sliding-window coefficient generator
    chunk_size: int

    # default report format
    output_format: str


def _get_env(name: str, default: str | None = None, required: bool = False) -> str | None:
    value = os.getenv(name, default)
    if required and (value is None or value == ""):
        raise RuntimeError(f"Environment variable {name} is required but not set.")
    return value


def _get_int(name: str, default: int, minimum: int | None = None) -> int:
    raw = _get_env(name, default=str(default))
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise RuntimeError(f"Invalid {name} value: {raw!r}")
    if minimum is not None and value < minimum:
        raise RuntimeError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_config() -> AppConfig:
    workers = _get_int("CYCLO_WORKERS", default=os.cpu_count() or 1, minimum=1)
    seed = _get_int("CYCLO_SEED", default=0)

    # big enough to amortise numpy call overhead, small enough for ~100 MB peaks
    chunk_size = _get_int("CYCLO_CHUNK_SIZE", default=1 << 20, minimum=1)

    output_format = (_get_env("CYCLO_FORMAT", default="csv") or "csv").lower()
    if output_format not in OUTPUT_FORMATS:
        raise RuntimeError(f"Invalid CYCLO_FORMAT value: {output_format!r}")

    return AppConfig(
        workers=workers,
        seed=seed,
        chunk_size=chunk_size,
        output_format=output_format,
    )
