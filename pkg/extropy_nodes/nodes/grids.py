"""
Grids
=====
Evaluation grids in t or in n, ordered parallel evaluation, and the ScanGrid
record that the CLI turns into CSV.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import pandas as pd

from .errors import DomainError, SpecParseError

log = logging.getLogger("extropy-nodes")


class Axis(str, Enum):
    T = "t"
    N = "n"


@dataclass(frozen=True)
class ScanGrid:
    axis: Axis
    points: list
    values: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise DomainError(f"{len(self.points)} grid points but {len(self.values)} values")
        if any(b <= a for a, b in zip(self.points[:-1], self.points[1:])):
            raise DomainError("scan grid points must be strictly increasing")

    def __len__(self):
        return len(self.points)

    def rows(self):
        return list(zip(self.points, self.values))

    def to_frame(self, columns=None):
        """One row per point. MeasureValue entries expand to
        value, method, error_estimate; tuples need ``columns``."""
        if columns is None:
            columns = ("value", "method", "error_estimate")
            records = [(v.value, v.method.value, v.error_estimate) for v in self.values]
        else:
            records = [tuple(v) for v in self.values]
        frame = pd.DataFrame.from_records(records, columns=list(columns))
        frame.insert(0, self.axis.value, self.points)
        return frame


def parse_range(text, integer=False):
    """``start:stop:count`` with both endpoints included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise SpecParseError(f"range '{text}' must look like start:stop:count", token=text)
    try:
        start = float(parts[0])
        stop = float(parts[1])
    except ValueError:
        bad = parts[0] if not _is_float(parts[0]) else parts[1]
        raise SpecParseError(f"range bound '{bad}' is not a number", token=bad) from None
    try:
        count = int(parts[2])
    except ValueError:
        raise SpecParseError(f"range count '{parts[2]}' is not an integer", token=parts[2]) from None
    if count < 1:
        raise SpecParseError(f"range count must be >= 1, got {count}", token=parts[2])
    if count == 1 and start != stop:
        raise SpecParseError(f"a single-point range needs start == stop in '{text}'", token=text)
    if count > 1 and not start < stop:
        raise SpecParseError(f"range '{text}' must have start < stop", token=text)
    points = np.linspace(start, stop, count)
    if integer:
        if not np.allclose(points, np.round(points)):
            raise SpecParseError(f"range '{text}' does not land on integers", token=text)
        return [int(round(p)) for p in points]
    return [float(p) for p in points]


def _is_float(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def map_ordered(fn, items, workers=1):
    """Apply ``fn`` to each item; results come back in input order."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _guarded(fn):
    def call(point):
        try:
            return point, fn(point), None
        except DomainError as e:
            return point, None, e

    return call


def scan(fn, points, axis=Axis.T, workers=1):
    """Evaluate ``fn`` over the grid. Points raising DomainError are dropped
    with a warning; every other error propagates."""
    kept, values = [], []
    for point, value, error in map_ordered(_guarded(fn), points, workers):
        if error is not None:
            log.warning(f"{axis.value}={point:g} skipped: {error}")
            continue
        kept.append(point)
        values.append(value)
    return ScanGrid(axis, kept, values)
