"""Input validation shared by the estimators and the CLI."""
from __future__ import annotations

import numpy as np

from .order_core import Box
from .pointset import PointSet


def check_points(X, n: int | None = None) -> np.ndarray:
    """Coerce ``X`` to an ``(k, n)`` int array of cone points.

    A flat sequence of integers is read as one-dimensional points. Raises
    ``ValueError`` on non-integer entries, wrong width, negative coordinates
    or the origin.
    """
    arr = np.asarray(X)
    if arr.size == 0:
        return np.zeros((0, n or 1), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D array of points, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.mod(arr, 1) == 0):
            raise ValueError("point coordinates must be integers")
        arr = arr.astype(np.int64)
    if n is not None and arr.shape[1] != n:
        raise ValueError(f"expected {n}-dimensional points, got {arr.shape[1]}")
    if (arr < 0).any():
        raise ValueError("points must have nonnegative coordinates")
    if (~arr.any(axis=1)).any():
        raise ValueError("the origin is not in the positive cone")
    return arr


def check_box(m, X=None) -> Box:
    """A :class:`Box` from bounds ``m`` (int or sequence), or inferred from ``X``."""
    if m is None:
        if X is None:
            raise ValueError("need either box bounds or data to infer them from")
        pts = check_points(X)
        if len(pts) == 0:
            raise ValueError("cannot infer a box from an empty set")
        return Box(tuple(max(1, int(v)) for v in pts.max(axis=0)))
    if isinstance(m, Box):
        return m
    if np.ndim(m) == 0:
        return Box.line(int(m))
    return Box(tuple(int(v) for v in m))


def as_pointset(X, box: Box) -> PointSet:
    """Accept a :class:`PointSet` in ``box`` or anything :func:`check_points` takes."""
    if isinstance(X, PointSet):
        if X.box != box:
            raise ValueError(f"set lives in box {X.box.m}, expected {box.m}")
        return X
    pts = check_points(X, box.n)
    return PointSet.from_points(map(tuple, pts), box)
