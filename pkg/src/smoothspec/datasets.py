"""Dataset loading and synthetic multi-scale blob generation."""

import csv
import json
from dataclasses import dataclass

import numpy as np

from .validation import as_label_vector


class CsvParseError(ValueError):
    """Raised when a CSV cell or row cannot be parsed as numeric data."""


@dataclass(frozen=True)
class BlobSpec:
    """One synthetic cluster: isotropic (scalar spread) or per-axis Gaussian blob."""

    center: tuple
    spread: tuple
    count: int

    @classmethod
    def from_dict(cls, d):
        center = tuple(float(c) for c in d["center"])
        spread = d["spread"]
        if np.isscalar(spread):
            spread = tuple(float(spread) for _ in center)
        else:
            spread = tuple(float(s) for s in spread)
        if len(spread) != len(center):
            raise ValueError(
                f"spread has {len(spread)} axes but center has {len(center)}"
            )
        count = int(d["count"])
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        return cls(center=center, spread=spread, count=count)


def load_blob_specs(path):
    """Read a JSON array of {center, spread, count} blob descriptions."""
    with open(path) as fh:
        raw = json.load(fh)
    if not isinstance(raw, list) or not raw:
        raise ValueError("blob spec file must hold a non-empty JSON array")
    return [BlobSpec.from_dict(d) for d in raw]


def load_csv(path, label_column=False, skip_header=False):
    """Load a numeric CSV file.

    Parameters
    ----------
    path : str
        File to read. Comma-separated, one object per row.
    label_column : bool
        If True, the last column is stripped off and returned as an
        integer label vector.
    skip_header : bool
        If True, the first line is discarded.

    Returns
    -------
    X : ndarray of shape (n, d)
    labels : ndarray of shape (n,) or None
    """
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            if skip_header and lineno == 1:
                continue
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            parsed = []
            for colno, cell in enumerate(row, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise CsvParseError(
                        f"non-numeric cell at row {lineno}, column {colno}: {cell!r}"
                    ) from None
            rows.append((lineno, parsed))

    if not rows:
        raise CsvParseError(f"no data rows in {path}")

    width = len(rows[0][1])
    for lineno, parsed in rows:
        if len(parsed) != width:
            raise CsvParseError(
                f"ragged row at line {lineno}: expected {width} fields, got {len(parsed)}"
            )

    data = np.array([parsed for _, parsed in rows], dtype=np.float64)
    if not np.isfinite(data).all():
        raise CsvParseError(f"non-finite value in {path}")

    if not label_column:
        return data, None
    if width < 2:
        raise CsvParseError("label column requested but file has a single column")
    labels = as_label_vector(data[:, -1], name="label column")
    return data[:, :-1], labels


def generate_multiscale(specs, seed=0):
    """Sample Gaussian blobs with per-cluster centers and spreads.

    Clusters may differ in spread by orders of magnitude, which is the
    multi-scale regime this library targets. Deterministic for a fixed seed;
    labels follow the order of the blob descriptions.

    Returns
    -------
    X : ndarray of shape (sum(counts), d)
    labels : ndarray of shape (sum(counts),)
    """
    if not specs:
        raise ValueError("need at least one blob spec")
    specs = [s if isinstance(s, BlobSpec) else BlobSpec.from_dict(s) for s in specs]
    dims = {len(s.center) for s in specs}
    if len(dims) != 1:
        raise ValueError(f"blob specs disagree on dimension: {sorted(dims)}")

    rng = np.random.default_rng(seed)
    blocks, labels = [], []
    for idx, s in enumerate(specs):
        center = np.asarray(s.center)
        spread = np.asarray(s.spread)
        blocks.append(center + spread * rng.standard_normal((s.count, center.size)))
        labels.append(np.full(s.count, idx, dtype=np.int64))
    return np.vstack(blocks), np.concatenate(labels)
