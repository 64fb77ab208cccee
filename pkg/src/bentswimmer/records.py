"""Time-series records and their CSV serialization."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

CSV_COLUMNS = (
    "t",
    "x",
    "y",
    "theta",
    "alpha1",
    "alpha2",
    "h_par",
    "h_perp",
    "h_x",
    "h_y",
    "d_value",
)
CSV_HEADER = ",".join(CSV_COLUMNS)


@dataclass(frozen=True)
class SimRecord:
    """Sampled run output: one row per output time, plus run metadata.

    Column semantics follow CSV_COLUMNS; h_x, h_y are the lab-frame image of
    the body-frame field (filled by emit_lab_frame_controls). Metadata holds
    the scenario hash, parameter echo, termination status and wall time; it
    is not part of the CSV payload.
    """

    data: np.ndarray  # shape (n, 11), columns per CSV_COLUMNS
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.data.ndim != 2 or self.data.shape[1] != len(CSV_COLUMNS):
            raise ValueError(
                f"record data must have {len(CSV_COLUMNS)} columns, got "
                f"{self.data.shape!r}"
            )

    def column(self, name: str) -> np.ndarray:
        return self.data[:, CSV_COLUMNS.index(name)]

    def __len__(self) -> int:
        return self.data.shape[0]

    def with_metadata(self, **kv) -> "SimRecord":
        md = dict(self.metadata)
        md.update(kv)
        return replace(self, metadata=md)


def emit_lab_frame_controls(record: SimRecord) -> SimRecord:
    """Fill h_x, h_y = rotation by theta of (h_par, h_perp), rowwise."""
    data = record.data.copy()
    theta = data[:, CSV_COLUMNS.index("theta")]
    hp = data[:, CSV_COLUMNS.index("h_par")]
    hq = data[:, CSV_COLUMNS.index("h_perp")]
    c = np.cos(theta)
    s = np.sin(theta)
    data[:, CSV_COLUMNS.index("h_x")] = c * hp - s * hq
    data[:, CSV_COLUMNS.index("h_y")] = s * hp + c * hq
    return replace(record, data=data)


def _fmt(v: float) -> str:
    """Shortest decimal string that round-trips to the same double."""
    if math.isnan(v):
        return "nan"
    return repr(v)


def write_csv(record: SimRecord, path) -> None:
    """UTF-8, LF line endings, '.' decimal separator, round-trip precision."""
    lines = [CSV_HEADER]
    for row in record.data:
        lines.append(",".join(_fmt(float(v)) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def read_csv(path) -> SimRecord:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        rows = [
            [float(tok) for tok in line.strip().split(",")]
            for line in fh
            if line.strip()
        ]
    return SimRecord(data=np.array(rows).reshape(-1, len(CSV_COLUMNS)))


__all__ = [
    "CSV_COLUMNS",
    "CSV_HEADER",
    "SimRecord",
    "emit_lab_frame_controls",
    "write_csv",
    "read_csv",
]
