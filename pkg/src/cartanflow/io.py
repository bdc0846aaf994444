"""Measure and matrix files, CSV tables.

Measure files are JSON::

    {"dim": 2, "atoms": [{"weight": 0.5, "matrix": [[2, 1], [1, 2]]}, ...]}

Matrix files are plain text, one row per line, whitespace-separated.
"""
from __future__ import annotations

import csv
import json
import sys
from pathlib import Path

import numpy as np

from .errors import InvalidArgumentError
from .measure import DiscreteMeasure
from .spd import as_spd

LOAD_WEIGHT_TOL = 1e-9


def measure_to_dict(mu: DiscreteMeasure) -> dict:
    return {
        "dim": mu.dim,
        "atoms": [
            {"weight": float(w), "matrix": [[float(x) for x in row] for row in A]}
            for w, A in zip(mu.weights, mu.atoms)
        ],
    }


def measure_from_dict(doc: dict) -> DiscreteMeasure:
    try:
        dim = int(doc["dim"])
        entries = doc["atoms"]
        weights = np.array([float(a["weight"]) for a in entries])
        atoms = np.array([a["matrix"] for a in entries], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"malformed measure document: {exc}") from exc
    if len(entries) == 0:
        raise InvalidArgumentError("measure has no atoms")
    if atoms.shape[1:] != (dim, dim):
        raise InvalidArgumentError(f"atom matrices have shape {atoms.shape[1:]}, expected ({dim}, {dim})")
    if np.any(weights <= 0):
        raise InvalidArgumentError("measure weights must be positive")
    if abs(weights.sum() - 1.0) > LOAD_WEIGHT_TOL:
        raise InvalidArgumentError(f"measure weights sum to {weights.sum():.17g}")
    return DiscreteMeasure(as_spd(atoms), weights / weights.sum())


def load_measure(path) -> DiscreteMeasure:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"{path}: not valid JSON ({exc})") from exc
    return measure_from_dict(doc)


def dump_measure(mu: DiscreteMeasure, path=None) -> str:
    text = json.dumps(measure_to_dict(mu), indent=1) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def parse_matrix(text: str) -> np.ndarray:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    try:
        M = np.array([[float(x) for x in row] for row in rows])
    except ValueError as exc:
        raise InvalidArgumentError(f"matrix text is not numeric: {exc}") from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidArgumentError(f"matrix text is not square (rows of lengths {[len(r) for r in rows]})")
    return M


def load_matrix(path) -> np.ndarray:
    return as_spd(parse_matrix(Path(path).read_text()))


def format_matrix(M: np.ndarray) -> str:
    return "\n".join(" ".join(fmt(x) for x in row) for row in M) + "\n"


def fmt(x) -> str:
    """17 significant digits: round-trips every double."""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(header, rows, path=None) -> None:
    """Write a header row and data rows; ``path=None`` writes to stdout."""
    handle = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    finally:
        if path:
            handle.close()
