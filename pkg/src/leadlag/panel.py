"""CSV panel ingestion.

A panel file has a timestamp in the first column and one series per
remaining column. Rows with a missing or unparseable value in any column
are dropped; retained rows must be strictly increasing in time. Each
column is z-scored on ingestion.
"""

import numpy as np
import pandas as pd

from .errors import (
    InsufficientDataError,
    NonMonotoneTimestampsError,
    ParseError,
)
from .series import TimeSeries, normalize

__all__ = ["ingest_panel"]


def ingest_panel(path, date_range=None, timestamp_format=None) -> list:
    """Read a panel CSV into a list of z-scored, equal-length series.

    ``date_range`` is an inclusive (start, end) pair of ISO-8601 timestamp
    strings. ``timestamp_format`` is a strptime pattern for the data column
    (for example ``"%d-%m-%Y %H:%M"``); the default accepts ISO-8601.
    """
    try:
        df = pd.read_csv(path)
    except (OSError, ValueError, pd.errors.ParserError) as exc:
        raise ParseError(f"cannot read panel {path}: {exc}") from exc
    if df.shape[1] < 2:
        raise ParseError(f"panel {path} needs a timestamp column plus at least one series")

    fmt = "ISO8601" if timestamp_format is None else timestamp_format
    ts = pd.to_datetime(df.iloc[:, 0], format=fmt, errors="coerce")
    values = df.iloc[:, 1:].apply(pd.to_numeric, errors="coerce")
    keep = ts.notna() & values.notna().all(axis=1)
    ts = ts[keep]
    values = values[keep]

    if date_range is not None:
        try:
            lo = pd.to_datetime(date_range[0])
            hi = pd.to_datetime(date_range[1])
        except (ValueError, TypeError) as exc:
            raise ParseError(f"bad date range {date_range}: {exc}") from exc
        inside = (ts >= lo) & (ts <= hi)
        ts = ts[inside]
        values = values[inside]

    if len(values) < 2:
        raise InsufficientDataError(
            f"panel {path} has {len(values)} complete rows in range; need at least 2"
        )
    t = ts.to_numpy()
    if not np.all(t[1:] > t[:-1]):
        raise NonMonotoneTimestampsError(f"panel {path} timestamps are not strictly increasing")

    return [
        normalize(TimeSeries(values[col].to_numpy(dtype=np.float64), label=str(col)))
        for col in values.columns
    ]
