"""Partial orders on lattice points, order ideals and total-order extensions.

Points are plain tuples of ints. The ambient group is Z^n with the
rectangular (coordinatewise) order; its positive cone is N_0^n minus the
origin. Computations happen inside a finite :class:`Box`, the grid
``0 <= x_i <= m_i``.

Order ideals of a box are handled internally as integer bit masks over the
C-order ravel of the grid (bit ``i`` is grid cell ``i``; bit 0 is the origin
and is never set in a cone ideal).
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

Point = tuple[int, ...]

DEFAULT_IDEAL_CAP = 10**6


class DimensionMismatch(ValueError):
    pass


class IdealCapExceeded(RuntimeError):
    """Raised before enumeration when a box has more ideals than allowed."""

    def __init__(self, count: int, cap: int, exact: bool = True):
        self.count = count
        self.cap = cap
        qualifier = "" if exact else "at least "
        super().__init__(
            f"box has {qualifier}{count} order ideals, exceeding the cap of {cap}"
        )


@dataclass(frozen=True)
class Box:
    """Finite truncation ``{x : 0 <= x_i <= m_i, x != 0}`` of the cone."""

    m: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(v) for v in self.m)
        if not m:
            raise ValueError("box needs at least one dimension")
        if any(v < 1 for v in m):
            raise ValueError(f"every bound must be >= 1, got {m}")
        object.__setattr__(self, "m", m)

    @classmethod
    def line(cls, N: int) -> "Box":
        return cls((N,))

    @property
    def n(self) -> int:
        return len(self.m)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self.m)

    @property
    def grid_size(self) -> int:
        return math.prod(self.shape)

    @property
    def cone_size(self) -> int:
        return self.grid_size - 1

    @property
    def strides(self) -> tuple[int, ...]:
        out = []
        acc = 1
        for s in reversed(self.shape):
            out.append(acc)
            acc *= s
        return tuple(reversed(out))

    def __contains__(self, x) -> bool:
        x = tuple(x)
        return (
            len(x) == self.n
            and all(0 <= xi <= mi for xi, mi in zip(x, self.m))
            and any(x)
        )

    def index(self, x: Point) -> int:
        return sum(xi * s for xi, s in zip(x, self.strides))

    def point(self, index: int) -> Point:
        out = []
        for s in self.strides:
            q, index = divmod(index, s)
            out.append(q)
        return tuple(out)

    def cone_points(self) -> Iterator[Point]:
        """Cone points of the box in lexicographic (= index) order."""
        it = product(*(range(s) for s in self.shape))
        next(it)  # origin
        yield from it

    def full_mask(self) -> int:
        return (1 << self.grid_size) - 2

    def mask_of(self, points: Iterable[Point]) -> int:
        mask = 0
        for x in points:
            mask |= 1 << self.index(x)
        return mask

    def points_of(self, mask: int) -> list[Point]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.point(low.bit_length() - 1))
            mask ^= low
        return out

    def to_list(self) -> list[int]:
        return list(self.m)


def _check_dims(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise DimensionMismatch(f"dimension mismatch: {len(x)} vs {len(y)}")


def in_cone(x: Sequence[int]) -> bool:
    return all(v >= 0 for v in x) and any(x)


def leq_rect(x: Sequence[int], y: Sequence[int]) -> bool:
    _check_dims(x, y)
    return all(a <= b for a, b in zip(x, y))


def leq_lex(x: Sequence[int], y: Sequence[int]) -> bool:
    _check_dims(x, y)
    for a, b in zip(x, y):
        if a != b:
            return a < b
    return True


def lt_rect(x: Sequence[int], y: Sequence[int]) -> bool:
    return tuple(x) != tuple(y) and leq_rect(x, y)


def unit_vector(n: int, i: int) -> Point:
    return tuple(1 if j == i else 0 for j in range(n))


@dataclass(frozen=True)
class ConeContext:
    """The lattice group Z^n with the rectangular order.

    This is the ordered-group interface the theorem checkers are written
    against: identity, group operation, inverse, partial order and the
    lower open interval ``(e, x)``. ``extension`` picks the total order used
    by constructions that need one: ``"lex"`` (the lexicographic order) or
    ``"topological"`` (a stable topological sort of the rectangular order).
    """

    n: int
    extension: str = "lex"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.extension not in ("lex", "topological"):
            raise ValueError(f"unknown extension {self.extension!r}")

    @property
    def identity(self) -> Point:
        return (0,) * self.n

    def op(self, x: Point, y: Point) -> Point:
        return tuple(a + b for a, b in zip(x, y))

    def inverse(self, x: Point) -> Point:
        return tuple(-a for a in x)

    def leq(self, x: Point, y: Point) -> bool:
        return leq_rect(x, y)

    def lt(self, x: Point, y: Point) -> bool:
        return lt_rect(x, y)

    def interval_below(self, x: Point) -> set[Point]:
        return open_interval_below(x)

    def atoms(self) -> set[Point]:
        return {unit_vector(self.n, i) for i in range(self.n)}


def open_interval_below(x: Sequence[int]) -> set[Point]:
    """``(0, x)`` under the rectangular order."""
    x = tuple(x)
    if not in_cone(x):
        raise ValueError(f"{x} is not in the positive cone")
    out = set(product(*(range(v + 1) for v in x)))
    out.discard(x)
    out.discard((0,) * len(x))
    return out


def is_downward_closed(S: Iterable[Sequence[int]], ctx: ConeContext | None = None) -> bool:
    S = {tuple(x) for x in S}
    for x in S:
        if not in_cone(x):
            raise ValueError(f"{x} is not in the positive cone")
        if ctx is not None and len(x) != ctx.n:
            raise DimensionMismatch(f"{x} is not {ctx.n}-dimensional")
    # immediate predecessors suffice: (0, x) is generated by x - e_i steps
    for x in S:
        for i, v in enumerate(x):
            if v:
                y = x[:i] + (v - 1,) + x[i + 1:]
                if any(y) and y not in S:
                    return False
    return True


@dataclass(frozen=True)
class OrderIdeal:
    """A nonempty, finite, downward-closed subset of the cone."""

    elements: frozenset

    def __post_init__(self):
        elems = frozenset(tuple(int(v) for v in x) for x in self.elements)
        if not elems:
            raise ValueError("an order ideal must be nonempty")
        if len({len(x) for x in elems}) != 1:
            raise DimensionMismatch("ideal mixes dimensions")
        if not is_downward_closed(elems):
            raise ValueError("set is not downward closed")
        object.__setattr__(self, "elements", elems)

    @property
    def n(self) -> int:
        return len(next(iter(self.elements)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, x) -> bool:
        return tuple(x) in self.elements

    def sorted(self) -> list[Point]:
        return sorted(self.elements)

    def maximal(self) -> list[Point]:
        return [x for x in self.sorted()
                if not any(lt_rect(x, y) for y in self.elements)]

    def to_list(self) -> list[list[int]]:
        return [list(x) for x in self.sorted()]


def downward_closure(S: Iterable[Sequence[int]]) -> OrderIdeal:
    S = [tuple(x) for x in S]
    if not S:
        raise ValueError("cannot close the empty set into an order ideal")
    out: set[Point] = set()
    for x in S:
        if x in out:
            continue
        out.add(x)
        out |= open_interval_below(x)
    return OrderIdeal(frozenset(out))


def atoms(ctx: ConeContext | int) -> set[Point]:
    n = ctx.n if isinstance(ctx, ConeContext) else int(ctx)
    return {unit_vector(n, i) for i in range(n)}


# -- ideal enumeration -------------------------------------------------------
#
# An ideal of the grid [0..m_0] x G' is a chain I_0 ⊇ I_1 ⊇ ... ⊇ I_{m_0} of
# ideals of G' (slice k holds the points with first coordinate k). Recursing
# on the remaining dimensions produces every ideal exactly once. Cone ideals
# are grid ideals with the origin removed; the two trivial grid ideals
# (empty and {origin}) give the empty cone ideal and are dropped.


def _hyperfactorial(n: int) -> int:
    return math.prod(math.factorial(k) for k in range(n))


def _closed_grid_count(shape: tuple[int, ...]) -> int | None:
    """Ideal count of a grid (empty ideal included) for up to three axes.

    Two axes: lattice paths, ``C(a + b, a)``. Three axes: plane partitions in
    an ``a x b x c`` box, MacMahon's product formula.
    """
    if len(shape) == 1:
        return shape[0] + 1
    if len(shape) == 2:
        return math.comb(shape[0] + shape[1], shape[0])
    if len(shape) == 3:
        a, b, c = shape
        H = _hyperfactorial
        return H(a) * H(b) * H(c) * H(a + b + c) // (H(a + b) * H(b + c) * H(a + c))
    return None


class _Containment:
    """``subs(i)``: indices of the listed ideals contained in ideal ``i``."""

    def __init__(self, masks: Sequence[int], width: int):
        words = max(1, (width + 63) // 64)
        full = (1 << 64) - 1
        self.words = np.array([[(g >> (64 * w)) & full for w in range(words)] for g in masks],
                              dtype=np.uint64)
        self._cache: dict[int, list[int]] = {}

    def subs(self, i: int) -> list[int]:
        out = self._cache.get(i)
        if out is None:
            L = self.words
            out = np.flatnonzero(((L & L[i]) == L).all(axis=1)).tolist()
            self._cache[i] = out
        return out


def _raise_if_over(shape: tuple[int, ...], cap: int) -> None:
    closed = _closed_grid_count(shape)
    if closed is not None:
        if closed - 2 > cap:
            raise IdealCapExceeded(closed - 2, cap)
        return
    # any three axes span a face whose ideals are ideals of the whole box
    face = tuple(sorted(shape)[-3:])
    if _closed_grid_count(face) - 2 > cap:
        raise IdealCapExceeded(_closed_grid_count(face) - 2, cap, exact=False)


@lru_cache(maxsize=64)
def _grid_ideals(shape: tuple[int, ...], cap: int) -> tuple[int, ...]:
    if not shape:
        return (0, 1)
    _raise_if_over(shape, cap)
    lower = _grid_ideals(shape[1:], cap)
    stride = math.prod(shape[1:])
    contain = _Containment(lower, stride)
    chains = [(a, i) for i, a in enumerate(lower)]
    for k in range(1, shape[0]):
        shift = k * stride
        grown = []
        for mask, i in chains:
            grown.extend((mask | (lower[j] << shift), j) for j in contain.subs(i))
            # each partial chain completes (with empty slices) to a distinct ideal
            if len(grown) - 2 > cap:
                raise IdealCapExceeded(len(grown) - 2, cap, exact=False)
        chains = grown
    return tuple(mask for mask, _ in chains)


def count_ideals(box: Box, cap: int = DEFAULT_IDEAL_CAP) -> int:
    """Number of nonempty cone ideals inside ``box``, without listing them.

    Exact closed forms up to three dimensions. Beyond that the ideals of a
    codimension-one slice are listed (subject to ``cap``) and chains of them
    are counted.
    """
    closed = _closed_grid_count(box.shape)
    if closed is not None:
        return closed - 2
    try:
        lower = _grid_ideals(box.shape[1:], cap)
    except IdealCapExceeded as exc:
        raise IdealCapExceeded(exc.count, cap, exact=False) from None
    if len(lower) > 20_000:
        # the chain count is quadratic in the slice; bounded listing is cheaper
        return len(_grid_ideals(box.shape, cap)) - 2
    contain = _Containment(lower, math.prod(box.shape[1:]))
    counts = [1] * len(lower)
    for _ in range(box.shape[0] - 1):
        counts = [sum(counts[j] for j in contain.subs(i)) for i in range(len(lower))]
    return sum(counts) - 2


@lru_cache(maxsize=32)
def ideal_masks(box: Box, cap: int = DEFAULT_IDEAL_CAP) -> tuple[int, ...]:
    """Bit masks of every nonempty cone ideal of ``box``.

    Ordered by size, then by mask value; this is the canonical enumeration
    order used for witness tie-breaking. Raises :class:`IdealCapExceeded`
    when the box holds more than ``cap`` ideals.
    """
    masks = [g & ~1 for g in _grid_ideals(box.shape, cap) if g & ~1]
    masks.sort(key=lambda g: (g.bit_count(), g))
    return tuple(masks)


def enumerate_ideals(box: Box, cap: int = DEFAULT_IDEAL_CAP) -> Iterator[OrderIdeal]:
    """Yield every nonempty downward-closed subset of the boxed cone once.

    Raises :class:`IdealCapExceeded` before yielding anything if the box
    holds more than ``cap`` ideals.
    """
    masks = ideal_masks(box, cap)
    for g in masks:
        yield OrderIdeal(frozenset(box.points_of(g)))


# -- total-order extensions --------------------------------------------------


@dataclass(frozen=True)
class LinearExtension:
    """A total order on a finite point set, given by ranks ``0..k-1``."""

    rank: dict = field(hash=False)
    method: str = "lex"

    def __post_init__(self):
        if sorted(self.rank.values()) != list(range(len(self.rank))):
            raise ValueError("ranks must be a bijection onto 0..k-1")

    def __len__(self) -> int:
        return len(self.rank)

    def order(self) -> list[Point]:
        return sorted(self.rank, key=self.rank.__getitem__)

    def leq(self, x: Point, y: Point) -> bool:
        return self.rank[x] <= self.rank[y]

    def max(self, points: Iterable[Point]) -> Point:
        return max(points, key=self.rank.__getitem__)

    def extends(self, leq: Callable[[Point, Point], bool] = leq_rect) -> bool:
        pts = list(self.rank)
        return all(self.rank[x] < self.rank[y]
                   for x in pts for y in pts if x != y and leq(x, y))


def topological_extension(S: Iterable, leq: Callable) -> LinearExtension:
    """Stable topological sort of a finite poset (Kahn, ties by input index).

    ``leq`` is the partial order. The result is a total order on ``S`` that
    extends it; among the available minimal elements the one listed first in
    ``S`` is always taken next.
    """
    items = list(dict.fromkeys(S))
    k = len(items)
    preds = [0] * k
    succs: list[list[int]] = [[] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i != j and leq(items[i], items[j]):
                succs[i].append(j)
                preds[j] += 1
    ready = [i for i in range(k) if preds[i] == 0]
    heapq.heapify(ready)
    rank = {}
    while ready:
        i = heapq.heappop(ready)
        rank[items[i]] = len(rank)
        for j in succs[i]:
            preds[j] -= 1
            if preds[j] == 0:
                heapq.heappush(ready, j)
    if len(rank) != k:
        raise ValueError("relation has a cycle; not a partial order")
    return LinearExtension(rank, method="topological")


def szpilrajn_extension(S: Iterable[Sequence[int]], ctx: ConeContext | None = None) -> LinearExtension:
    """A total order on the finite set ``S`` extending the rectangular order.

    With the default lattice context this is the lexicographic order
    restricted to ``S``; ``ctx.extension == "topological"`` uses the generic
    stable topological sort instead.
    """
    pts = [tuple(x) for x in S]
    if ctx is not None and ctx.extension == "topological":
        return topological_extension(pts, leq_rect)
    return LinearExtension({x: r for r, x in enumerate(sorted(set(pts)))}, method="lex")
