"""Exact box-relative Shnirel'man densities.

Values are infima over a finite family (prefixes ``{1..n}``, ``n <= N`` in
one dimension; every nonempty order ideal of the box in general), so they are
upper bounds on the density over the whole cone and never increase as the
box grows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .order_core import Box, DEFAULT_IDEAL_CAP, OrderIdeal, ideal_masks
from .pointset import PointSet


def frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class DensityReport:
    value: Fraction
    witness: OrderIdeal
    family_size: int
    box: Box

    def to_dict(self) -> dict:
        return {
            "value": frac_str(self.value),
            "value_approx": float(self.value),
            "witness": self.witness.to_list(),
            "family_size": self.family_size,
            "box": self.box.to_list(),
            "scope": "box-relative",
        }


def _prefix_ideal(n: int) -> OrderIdeal:
    return OrderIdeal(frozenset((k,) for k in range(1, n + 1)))


def sigma_1d(A: PointSet, N: int | None = None) -> DensityReport:
    """min over ``1 <= n <= N`` of ``A(n)/n``, with the first minimising prefix."""
    if N is None:
        N = A.box.m[0]
    if A.box.n != 1:
        raise ValueError("sigma_1d needs a one-dimensional set")
    if N < 1:
        raise ValueError("N must be >= 1")
    if N > A.box.m[0]:
        raise ValueError(f"N={N} exceeds the box bound {A.box.m[0]}")
    best_c, best_n = 2, 1
    count = 0
    mask = A.mask
    for n in range(1, N + 1):
        count += mask >> n & 1
        if count * best_n < best_c * n:
            best_c, best_n = count, n
    return DensityReport(Fraction(best_c, best_n), _prefix_ideal(best_n), N, Box.line(N))


def min_ratio(mask: int, masks, sizes=None) -> tuple[int, int, int]:
    """(count, size, index) of the first ideal minimising ``|A ∩ J| / |J|``."""
    best_c, best_s, best_i = 2, 1, -1
    for i, g in enumerate(masks):
        c = (mask & g).bit_count()
        s = sizes[i] if sizes is not None else g.bit_count()
        if c * best_s < best_c * s:
            best_c, best_s, best_i = c, s, i
            if c == 0:
                break
    return best_c, best_s, best_i


def sigma_ideal_family(A: PointSet, box: Box | None = None,
                       cap: int = DEFAULT_IDEAL_CAP) -> DensityReport:
    """Minimum of ``|A ∩ J| / |J|`` over all nonempty order ideals of the box."""
    box = box or A.box
    if box != A.box:
        raise ValueError(f"set lives in box {A.box.m}, not {box.m}")
    masks = ideal_masks(box, cap)
    c, s, i = min_ratio(A.mask, masks)
    witness = OrderIdeal(frozenset(box.points_of(masks[i])))
    return DensityReport(Fraction(c, s), witness, len(masks), box)


def density(A: PointSet, cap: int = DEFAULT_IDEAL_CAP) -> DensityReport:
    """Box-relative density, using the prefix route in dimension one."""
    if A.box.n == 1:
        return sigma_1d(A)
    return sigma_ideal_family(A, cap=cap)


def h0_for_half(alpha) -> int:
    """Least ``h`` with ``1 - (1 - alpha)**h >= 1/2``, in exact arithmetic."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if alpha > 1:
        raise ValueError("alpha must be at most 1")
    h, rest = 1, 1 - alpha
    while rest > Fraction(1, 2):
        rest *= 1 - alpha
        h += 1
    return h
