# Brute-force reference implementations. Deliberately naive and independent of
# the fast paths they check: no bit grids, no chain decomposition of ideals.
from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np


def cone_points(m) -> list[tuple]:
    pts = list(product(*(range(v + 1) for v in m)))
    return pts[1:]


def naive_sumset(A, B, m) -> set:
    A0 = [tuple(a) for a in A] + [(0,) * len(m)]
    B0 = [tuple(b) for b in B] + [(0,) * len(m)]
    out = set()
    for a in A0:
        for b in B0:
            s = tuple(x + y for x, y in zip(a, b))
            if any(s) and all(v <= bound for v, bound in zip(s, m)):
                out.add(s)
    return out


def naive_sumset_1d(A, B, N) -> set:
    A0 = set(A) | {0}
    B0 = set(B) | {0}
    return {a + b for a in A0 for b in B0 if 0 < a + b <= N}


def interval_size_formula(x) -> int:
    return math.prod(v + 1 for v in x) - 2


def naive_interval(x, m) -> set:
    return {z for z in cone_points(m)
            if z != tuple(x) and all(a <= b for a, b in zip(z, x))}


def brute_force_ideals(m) -> set:
    """Every nonempty downward-closed subset of the boxed cone, by filtering
    all subsets. Only for boxes with at most ~20 cone points."""
    pts = cone_points(m)
    k = len(pts)
    if k > 22:
        raise ValueError("box too large for subset filtering")
    masks = np.arange(1, 1 << k, dtype=np.uint32)
    ok = np.ones(len(masks), dtype=bool)
    for j, y in enumerate(pts):
        for i, x in enumerate(pts):
            if i != j and all(a <= b for a, b in zip(x, y)):
                # y in S  =>  x in S
                ok &= ((masks >> j) & 1 == 0) | ((masks >> i) & 1 == 1)
    out = set()
    for g in masks[ok].tolist():
        out.add(frozenset(pts[i] for i in range(k) if g >> i & 1))
    return out


def naive_density(A, ideals) -> Fraction:
    A = {tuple(a) for a in A}
    return min(Fraction(len(A & J), len(J)) for J in ideals)


def naive_sigma_1d(A, N) -> Fraction:
    A = set(A)
    return min(Fraction(sum(1 for a in A if a <= n), n) for n in range(1, N + 1))
