"""
Report Module
Run reports as versioned JSON and result tables as CSV
"""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction

import numpy as np

from modules import config


logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _to_json(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bytes):
        return value.decode("ascii")
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(value, indent=None):
    """Deterministic JSON: sorted keys, Fractions as 'num/den'."""
    return json.dumps(value, default=_to_json, sort_keys=True, indent=indent)


@dataclass
class RunReport:
    """
    Record of one command invocation

    The payload alone is deterministic for deterministic commands; wall
    time and the version live outside it.
    """
    command: str
    parameters: dict
    payload: dict = field(default_factory=dict)
    seed: int | None = None
    wall_time: float = 0.0
    version: str = config.VERSION

    def payload_json(self):
        return dumps(self.payload)

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "seed": self.seed,
            "payload": self.payload,
            "wall_time": round(self.wall_time, 6),
        }

    def to_json(self):
        return dumps(self.to_dict(), indent=2)

    def write(self, path):
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json() + "\n")
        logger.info(f"Report written to {path}")
        return path


class ReportWriter:
    """Writes reports into one directory, timestamped plus a latest copy."""

    def __init__(self, output_dir=None):
        self.output_dir = output_dir or config.OUTPUT_DIR
        os.makedirs(self.output_dir, exist_ok=True)

    def save(self, report, name):
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        report_path = report.write(os.path.join(self.output_dir, f"{name}_{timestamp}.json"))
        latest_path = report.write(os.path.join(self.output_dir, f"{name}_latest.json"))
        return report_path, latest_path


def write_json(value, path):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(value, indent=2) + "\n")
    logger.info(f"JSON written to {path}")


def write_csv(frame, path):
    """Write a pandas DataFrame without its index."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info(f"CSV written to {path} ({len(frame)} rows)")


def format_fraction(value):
    """'num/den' with a 17-significant-digit decimal."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator} ({float(value):.17g})"
