"""Subsets of a boxed cone and their {0}-augmented sumsets.

A :class:`PointSet` stores membership as a Python int used as a bit grid in
C-order over the box (see :class:`~shnirelman.order_core.Box`). The origin
bit is always clear; sumsets add the origin to both operands internally.
"""
from __future__ import annotations

import json
from typing import Iterable, Iterator, Sequence

import numpy as np

from .order_core import Box, Point


class BoxMismatch(ValueError):
    pass


class PointSet:
    """Immutable subset of the boxed cone ``box``."""

    __slots__ = ("box", "mask")

    def __init__(self, box: Box, mask: int = 0):
        if mask & 1:
            raise ValueError("the origin is never a member of a PointSet")
        if mask >> box.grid_size:
            raise ValueError("mask has bits outside the box")
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "mask", int(mask))

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    @classmethod
    def from_points(cls, points: Iterable, box: Box) -> "PointSet":
        mask = 0
        for x in points:
            x = (int(x),) if np.ndim(x) == 0 else tuple(int(v) for v in x)
            if x not in box:
                raise ValueError(f"{x} is not in the boxed cone {box.m}")
            mask |= 1 << box.index(x)
        return cls(box, mask)

    @classmethod
    def from_grid(cls, grid: np.ndarray, box: Box) -> "PointSet":
        grid = np.asarray(grid, dtype=bool)
        if grid.shape != box.shape:
            raise BoxMismatch(f"grid shape {grid.shape} != box shape {box.shape}")
        flat = grid.ravel().copy()
        flat[0] = False
        packed = np.packbits(flat, bitorder="little").tobytes()
        return cls(box, int.from_bytes(packed, "little"))

    @classmethod
    def full(cls, box: Box) -> "PointSet":
        return cls(box, box.full_mask())

    @classmethod
    def empty(cls, box: Box) -> "PointSet":
        return cls(box, 0)

    # -- views ---------------------------------------------------------------

    def grid(self) -> np.ndarray:
        """Dense boolean view of shape ``box.shape`` (a fresh array)."""
        size = self.box.grid_size
        raw = self.mask.to_bytes((size + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return bits[:size].astype(bool).reshape(self.box.shape)

    def points(self) -> list[Point]:
        return self.box.points_of(self.mask)

    def integers(self) -> list[int]:
        if self.box.n != 1:
            raise ValueError("integer view only exists in dimension 1")
        return [x[0] for x in self.points()]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, x) -> bool:
        x = (x,) if isinstance(x, (int, np.integer)) else tuple(x)
        return x in self.box and bool(self.mask >> self.box.index(x) & 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.box == other.box and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.box, self.mask))

    def __repr__(self) -> str:
        pts = self.points()
        shown = pts if len(pts) <= 8 else pts[:8] + ["..."]
        return f"PointSet(box={self.box.m}, {len(pts)} points: {shown})"

    # -- set algebra ---------------------------------------------------------

    def _same_box(self, other: "PointSet") -> None:
        if self.box != other.box:
            raise BoxMismatch(f"boxes differ: {self.box.m} vs {other.box.m}")

    def __or__(self, other: "PointSet") -> "PointSet":
        self._same_box(other)
        return PointSet(self.box, self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        self._same_box(other)
        return PointSet(self.box, self.mask & other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        self._same_box(other)
        return PointSet(self.box, self.mask & ~other.mask)

    def complement(self) -> "PointSet":
        return PointSet(self.box, self.box.full_mask() & ~self.mask)

    def issubset(self, other: "PointSet") -> bool:
        self._same_box(other)
        return self.mask & ~other.mask == 0

    def issuperset(self, other: "PointSet") -> bool:
        return other.issubset(self)

    def is_full(self) -> bool:
        return self.mask == self.box.full_mask()

    def missing(self) -> list[Point]:
        return self.complement().points()

    # -- serialisation -------------------------------------------------------

    def to_list(self) -> list:
        if self.box.n == 1:
            return self.integers()
        return [list(x) for x in self.points()]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str, box: Box) -> "PointSet":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ValueError("expected a JSON array")
        return cls.from_points(data, box)


def _sumset_1d(a: int, b: int, size: int) -> int:
    # shift-or: every member of A ∪ {0} translates B ∪ {0}
    b |= 1
    out = 0
    rest = a | 1
    while rest:
        low = rest & -rest
        out |= b << (low.bit_length() - 1)
        rest ^= low
    return out & ((1 << size) - 2)


def _sumset_grid(A: PointSet, B: PointSet) -> PointSet:
    box = A.box
    src = B.grid()
    src.flat[0] = True
    out = np.zeros(box.shape, dtype=bool)
    for a in [(0,) * box.n] + A.points():
        tgt = tuple(slice(ai, None) for ai in a)
        keep = tuple(slice(0, s - ai) for ai, s in zip(a, box.shape))
        out[tgt] |= src[keep]
    return PointSet.from_grid(out, box)


def sumset(A: PointSet, B: PointSet) -> PointSet:
    """``((A ∪ {0}) + (B ∪ {0})) \\ {0}`` inside the box.

    Truncation to the box is exact: a decomposition ``x = a + b`` of a boxed
    point with ``a, b >= 0`` has both summands in the box.
    """
    A._same_box(B)
    if A.box.n == 1:
        return PointSet(A.box, _sumset_1d(A.mask, B.mask, A.box.grid_size))
    # translate by the smaller operand
    if len(A) > len(B):
        A, B = B, A
    return _sumset_grid(A, B)


def hfold(A: PointSet, h: int) -> PointSet:
    if h < 1:
        raise ValueError("h must be a positive integer")
    out = A
    for _ in range(h - 1):
        nxt = sumset(out, A)
        if nxt == out:
            break
        out = nxt
    return out


def sum_of_sets(sets: Sequence[PointSet]) -> PointSet:
    if not sets:
        raise ValueError("need at least one set")
    out = sets[0]
    for S in sets[1:]:
        out = sumset(out, S)
    return out


def counting_function(A: PointSet, x) -> int:
    """Number of members of ``A`` rectangularly below ``x``."""
    x = (int(x),) if np.ndim(x) == 0 else tuple(int(v) for v in x)
    if x not in A.box:
        raise ValueError(f"{x} is outside the boxed cone {A.box.m}")
    g = A.grid()
    return int(g[tuple(slice(0, xi + 1) for xi in x)].sum())
