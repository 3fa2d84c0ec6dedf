"""Constructive checkers for the addition theorems.

Each checker computes both sides of a theorem exactly over the box-relative
ideal family and returns a report whose verdict is one of ``holds``,
``hypothesis-not-met`` (the instance is vacuous and must not be counted as
evidence) or ``violated`` (which would mean a bug, since the statements are
theorems; the nD Mann explorer is the one exception).

All box-relative statements checked here are sound: the proofs only use
ideals ``(0, x)``, closed boxes ``[0, x]`` and translates ``J_l - b_l``,
and each of these lies inside the box whenever ``J`` does.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .density import DensityReport, frac_str, min_ratio, sigma_1d, sigma_ideal_family
from .order_core import (Box, ConeContext, DEFAULT_IDEAL_CAP, LinearExtension, OrderIdeal,
                         Point, atoms, ideal_masks, is_downward_closed, szpilrajn_extension)
from .pointset import PointSet, hfold, sum_of_sets, sumset

HOLDS = "holds"
NOT_MET = "hypothesis-not-met"
VIOLATED = "violated"


class HypothesisNotMet(ValueError):
    """The instance does not satisfy the theorem's hypotheses."""


class TheoremViolated(RuntimeError):
    """A guaranteed object was not found; indicates an implementation bug."""


def _render(value):
    if isinstance(value, Fraction):
        return frac_str(value)
    if isinstance(value, dict):
        return {k: _render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    return value


def _density(S: PointSet, cap: int) -> DensityReport:
    return sigma_ideal_family(S, cap=cap)


# -- pigeonhole --------------------------------------------------------------


class Decomposition(NamedTuple):
    a: Point
    b: Point
    direct: bool = False


def pigeonhole_decompose_1d(A: PointSet, B: PointSet, x: int, N: int | None = None,
                            alpha: Fraction | None = None,
                            beta: Fraction | None = None) -> Decomposition:
    """Write ``x = a + b`` with ``a ∈ A ∪ {0}``, ``b ∈ B ∪ {0}``.

    Requires ``sigma(A) + sigma(B) >= 1`` on ``{1..N}``. Targets in ``A ∪ B``
    are returned as ``(x, 0)`` / ``(0, x)`` with ``direct=True``; otherwise
    the smallest ``a`` in ``A ∩ [1, x-1]`` that also lies in ``x - B`` is used.
    """
    if A.box != B.box or A.box.n != 1:
        raise ValueError("need two sets in the same one-dimensional box")
    N = A.box.m[0] if N is None else N
    if not 1 <= x <= N:
        raise ValueError(f"target {x} outside 1..{N}")
    alpha = sigma_1d(A, N).value if alpha is None else alpha
    beta = sigma_1d(B, N).value if beta is None else beta
    if alpha + beta < 1:
        raise HypothesisNotMet(f"sigma(A) + sigma(B) = {alpha + beta} < 1")
    if x in A:
        return Decomposition((x,), (0,), True)
    if x in B:
        return Decomposition((0,), (x,), True)
    for a in range(1, x):
        if a in A and x - a in B:
            return Decomposition((a,), (x - a,))
    raise TheoremViolated(f"no decomposition of {x} although alpha + beta >= 1")


def pigeonhole_decompose(A: PointSet, B: PointSet, x: Sequence[int], box: Box | None = None,
                         alpha: Fraction | None = None, beta: Fraction | None = None,
                         ctx: ConeContext | None = None,
                         cap: int = DEFAULT_IDEAL_CAP) -> Decomposition:
    """Find ``a ∈ A``, ``b ∈ B`` with ``a + b = x`` for a non-atom ``x``.

    Needs ``sigma(A) + sigma(B) > 1``. Inside ``J = (0, x)`` the sets
    ``A ∩ J`` and ``x - (B ∩ J)`` are too large to be disjoint; the
    lexicographically first common element gives ``a``.
    """
    box = box or A.box
    if A.box != box or B.box != box:
        raise ValueError("sets must live in the given box")
    ctx = ctx or ConeContext(box.n)
    x = tuple(int(v) for v in x)
    if x not in box:
        raise ValueError(f"{x} is not in the boxed cone")
    alpha = _density(A, cap).value if alpha is None else alpha
    beta = _density(B, cap).value if beta is None else beta
    if alpha + beta <= 1:
        raise HypothesisNotMet(f"sigma(A) + sigma(B) = {alpha + beta} is not > 1")
    J = ctx.interval_below(x)
    if not J:
        raise ValueError(f"{x} is an atom; its interval is empty (use cover_check)")
    reflected = {ctx.op(x, ctx.inverse(b)) for b in J if b in B}
    for a in sorted(p for p in J if p in A):
        if a in reflected:
            return Decomposition(a, ctx.op(x, ctx.inverse(a)))
    raise TheoremViolated(f"A ∩ J and x - (B ∩ J) are disjoint for x = {x}")


@dataclass
class CoverReport:
    theorem: str
    verdict: str
    hypotheses: dict
    alpha: Fraction
    beta: Fraction
    missing: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return _render({
            "theorem": self.theorem,
            "verdict": self.verdict,
            "hypotheses": self.hypotheses,
            "alpha": self.alpha,
            "beta": self.beta,
            "sigma_sum": self.alpha + self.beta,
            "witnesses": [list(p) for p in self.missing],
        })


def cover_check(A: PointSet, B: PointSet, box: Box | None = None,
                classical: bool | None = None, cap: int = DEFAULT_IDEAL_CAP) -> CoverReport:
    """Check that ``A + B`` covers the whole boxed cone.

    ``classical`` (default: dimension one) uses the integer hypothesis
    ``alpha + beta >= 1``; otherwise the lattice hypotheses apply: every atom
    in ``A ∪ B`` and ``alpha + beta > 1``. Missing points are listed.
    """
    box = box or A.box
    if classical is None:
        classical = box.n == 1
    alpha = _density(A, cap).value
    beta = _density(B, cap).value
    union = A | B
    if classical:
        theorem = "shnirelman-pigeonhole"
        hyp = {"density_sum_at_least_one": alpha + beta >= 1}
    else:
        theorem = "order-pigeonhole-cover"
        hyp = {
            "atoms_in_union": all(e in union for e in atoms(box.n)),
            "density_sum_above_one": alpha + beta > 1,
        }
    if not all(hyp.values()):
        return CoverReport(theorem, NOT_MET, hyp, alpha, beta)
    missing = sumset(A, B).missing()
    return CoverReport(theorem, VIOLATED if missing else HOLDS, hyp, alpha, beta, missing)


# -- partition construction --------------------------------------------------


@dataclass
class PartitionCertificate:
    J: OrderIdeal
    B_used: frozenset
    parts: list  # [(b_l, frozenset J_l)] ordered by the extension rank of b_l
    extension: LinearExtension
    ctx: ConeContext

    def translate(self, b: Point, part) -> set:
        inv = self.ctx.inverse(b)
        return {self.ctx.op(x, inv) for x in part}

    def check(self) -> dict:
        """The four certificate invariants, each as a boolean."""
        j_star = set(self.J.elements) - set(self.B_used)
        union: set = set()
        disjoint = True
        for _, part in self.parts:
            if not part or union & part:
                disjoint = False
            union |= part
        bs = [b for b, _ in self.parts]
        translates_ok = True
        for b, part in self.parts:
            t = self.translate(b, part)
            if not all(any(p) and min(p) >= 0 for p in t) or not is_downward_closed(t):
                translates_ok = False
        return {
            "pairwise_disjoint": disjoint,
            "union_is_J_minus_B": union == j_star,
            "b_in_B_distinct": all(b in self.B_used for b in bs) and len(set(bs)) == len(bs),
            "translates_downward_closed": translates_ok,
        }

    @property
    def valid(self) -> bool:
        return all(self.check().values())

    def to_dict(self) -> dict:
        return {
            "J": self.J.to_list(),
            "extension": self.extension.method,
            "parts": [
                {"b": list(b), "J_l": [list(p) for p in sorted(part)],
                 "translate": [list(p) for p in sorted(self.translate(b, part))]}
                for b, part in self.parts
            ],
            "invariants": self.check(),
        }


def partition_j_star(J: OrderIdeal, B, ctx: ConeContext | None = None) -> PartitionCertificate:
    """Split ``J \\ B`` into classes with downward-closed translates.

    Every ``x`` in ``J* = J \\ B`` is assigned ``b*(x)``, the maximum of
    ``B ∩ (0, x)`` under a total extension of the rectangular order; the
    classes are the fibres of ``b*``. ``B`` may be a :class:`PointSet` or any
    iterable of points.
    """
    ctx = ctx or ConeContext(J.n)
    B = frozenset(tuple(b) for b in B)
    j_star = sorted(set(J.elements) - B)
    if not j_star:
        raise HypothesisNotMet("empty J*: J is contained in B")
    ext = szpilrajn_extension(J.elements, ctx)
    classes: dict = {}
    for x in j_star:
        below = [b for b in ctx.interval_below(x) if b in B]
        if not below:
            raise HypothesisNotMet(f"B ∩ (0, x) is empty for x = {x}")
        classes.setdefault(ext.max(below), set()).add(x)
    parts = [(b, frozenset(classes[b])) for b in sorted(classes, key=ext.rank.__getitem__)]
    used = frozenset(b for b in B if b in J)
    return PartitionCertificate(J, used, parts, ext, ctx)


# -- Shnirel'man inequality and consequences ---------------------------------


@dataclass
class InequalityReport:
    alpha: Fraction
    beta: Fraction
    bound: Fraction
    sigma_C: Fraction
    box: Box
    ideal_masks: tuple = field(repr=False)
    counts: list = field(repr=False)  # (|C ∩ J|, |B ∩ J|, |J|) per ideal
    refined_checked: bool = False
    witness: OrderIdeal | None = None
    theorem: str = "shnirelman-inequality"

    def __post_init__(self):
        p, q = self.bound.numerator, self.bound.denominator
        self.failing = [i for i, (c, _, s) in enumerate(self.counts) if c * q < p * s]
        self.refined_failing = []
        if self.refined_checked:
            # |C ∩ J| >= (1 - alpha)|B ∩ J| + alpha |J|
            a = self.alpha
            self.refined_failing = [
                i for i, (c, b, s) in enumerate(self.counts) if c < (1 - a) * b + a * s]

    @property
    def per_ideal_margins(self) -> dict:
        """Ideal mask -> ``|C ∩ J| / |J| - bound``."""
        return {g: Fraction(c, s) - self.bound
                for g, (c, _, s) in zip(self.ideal_masks, self.counts)}

    @property
    def min_margin(self) -> Fraction:
        return self.sigma_C - self.bound

    @property
    def verdict(self) -> str:
        ok = self.sigma_C >= self.bound and not self.failing and not self.refined_failing
        return HOLDS if ok else VIOLATED

    def margin_rows(self):
        for g, margin in self.per_ideal_margins.items():
            yield self.box.points_of(g), margin

    def to_dict(self, include_margins: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "hypotheses": {"atoms_in_B": self.refined_checked},
            "alpha": self.alpha,
            "beta": self.beta,
            "sigma_sum": self.sigma_C,
            "bound": self.bound,
            "min_margin": self.min_margin,
            "family_size": len(self.counts),
            "violating_ideals": [sorted(self.box.points_of(self.ideal_masks[i]))
                                 for i in self.failing + self.refined_failing],
            "witnesses": [self.witness.to_list()] if self.witness else [],
        }
        if include_margins:
            out["per_ideal_margins"] = [
                {"ideal": [list(p) for p in sorted(pts)], "margin": m}
                for pts, m in self.margin_rows()]
        return _render(out)


def verify_shnirelman(A: PointSet, B: PointSet, box: Box | None = None,
                      cap: int = DEFAULT_IDEAL_CAP) -> InequalityReport:
    """Check ``sigma(A + B) >= alpha + beta - alpha*beta`` globally and per ideal.

    When every atom is in ``B`` the sharper per-ideal count from the
    partition argument, ``|C ∩ J| >= (1 - alpha)|B ∩ J| + alpha|J|``, is
    checked as well.
    """
    box = box or A.box
    if A.box != box or B.box != box:
        raise ValueError("sets must live in the given box")
    masks = ideal_masks(box, cap)
    C = sumset(A, B)
    alpha = _density(A, cap).value
    beta = _density(B, cap).value
    counts = [((C.mask & g).bit_count(), (B.mask & g).bit_count(), g.bit_count())
              for g in masks]
    c, s, best = min_ratio(C.mask, masks)
    sigma_C = Fraction(c, s)
    refined = all(e in B for e in atoms(box.n))
    return InequalityReport(
        alpha, beta, alpha + beta - alpha * beta, sigma_C, box, masks, counts,
        refined_checked=refined,
        witness=OrderIdeal(frozenset(box.points_of(masks[best]))))


@dataclass
class ProductBoundReport:
    alphas: list
    sigma_sum: Fraction
    lhs: Fraction
    rhs: Fraction
    atoms_in_every_set: bool
    theorem: str = "product-bound"

    @property
    def verdict(self) -> str:
        return HOLDS if self.lhs <= self.rhs else VIOLATED

    def to_dict(self) -> dict:
        return _render({
            "theorem": self.theorem,
            "verdict": self.verdict,
            "hypotheses": {"atoms_in_every_set": self.atoms_in_every_set},
            "alphas": self.alphas,
            "sigma_sum": self.sigma_sum,
            "bound": self.rhs,
            "one_minus_sigma_sum": self.lhs,
        })


def verify_product_bound(sets: Sequence[PointSet], box: Box | None = None,
                         cap: int = DEFAULT_IDEAL_CAP) -> ProductBoundReport:
    """Check ``1 - sigma(A_1 + ... + A_h) <= prod(1 - sigma(A_i))``."""
    if len(sets) < 2:
        raise ValueError("need at least two sets")
    box = box or sets[0].box
    alphas = [_density(S, cap).value for S in sets]
    sigma = _density(sum_of_sets(list(sets)), cap).value
    rhs = Fraction(1)
    for a in alphas:
        rhs *= 1 - a
    at = atoms(box.n)
    return ProductBoundReport(alphas, sigma, 1 - sigma, rhs,
                              all(e in S for S in sets for e in at))


@dataclass
class BasisReport:
    order: int | None
    alpha: Fraction
    h_max: int
    h0: int | None
    theorem: str = "basis-theorem"

    @property
    def bound(self) -> int | None:
        return None if self.h0 is None else 2 * self.h0

    @property
    def verdict(self) -> str:
        if self.alpha <= 0:
            return NOT_MET
        if self.order is not None:
            return HOLDS if self.order <= self.bound else VIOLATED
        # no basis up to h_max: only a contradiction if h_max reached the bound
        return VIOLATED if self.h_max >= self.bound else NOT_MET

    def to_dict(self) -> dict:
        return _render({
            "theorem": self.theorem,
            "verdict": self.verdict,
            "hypotheses": {"alpha_positive": self.alpha > 0,
                           "h_max_reaches_bound": self.bound is not None
                           and self.h_max >= self.bound},
            "alpha": self.alpha,
            "order": self.order if self.order is not None else "not a basis within h_max",
            "h0_for_half": self.h0,
            "bound": self.bound,
            "h_max": self.h_max,
        })


def basis_order(A: PointSet, box: Box | None = None, h_max: int = 16,
                cap: int = DEFAULT_IDEAL_CAP) -> BasisReport:
    """Least ``h <= h_max`` with ``hA`` covering the boxed cone.

    ``report.order`` is ``None`` when no such ``h`` exists. For positive
    density the theorem bounds the order by ``2 * h0_for_half(alpha)``.
    """
    from .density import h0_for_half

    if h_max < 1:
        raise ValueError("h_max must be >= 1")
    box = box or A.box
    alpha = _density(A, cap).value
    order = None
    S = A
    for h in range(1, h_max + 1):
        if S.is_full():
            order = h
            break
        nxt = sumset(S, A)
        if nxt == S:
            break
        S = nxt
    return BasisReport(order, alpha, h_max, h0_for_half(alpha) if alpha > 0 else None)


@dataclass
class MannReport:
    alpha: Fraction
    beta: Fraction
    sigma_C: Fraction
    n: int
    box: Box
    reproduction: dict
    theorem: str = "mann"

    @property
    def bound(self) -> Fraction:
        return min(Fraction(1), self.alpha + self.beta)

    @property
    def asserted(self) -> bool:
        return self.n == 1

    @property
    def consistent(self) -> bool:
        return self.sigma_C >= self.bound

    @property
    def verdict(self) -> str:
        return HOLDS if self.consistent else VIOLATED

    @property
    def observation(self) -> str:
        if self.asserted:
            return "asserted"
        return "consistent" if self.consistent else "candidate-observation"

    def to_dict(self) -> dict:
        return _render({
            "theorem": self.theorem if self.asserted else "mann-explorer",
            "verdict": self.verdict,
            "asserted": self.asserted,
            "observation": self.observation,
            "hypotheses": {},
            "alpha": self.alpha,
            "beta": self.beta,
            "sigma_sum": self.sigma_C,
            "bound": self.bound,
            "reproduction": self.reproduction if not self.consistent else {},
        })


def mann_check(A: PointSet, B: PointSet, box: Box | None = None,
               cap: int = DEFAULT_IDEAL_CAP) -> MannReport:
    """Compare ``sigma(A + B)`` with ``min(1, alpha + beta)``.

    A theorem in dimension one. In higher dimension this is an open question
    and the report only records the comparison; callers must not treat a
    shortfall as a bug.
    """
    box = box or A.box
    alpha = _density(A, cap).value
    beta = _density(B, cap).value
    sigma_C = _density(sumset(A, B), cap).value
    repro = {"box": box.to_list(), "A": A.to_list(), "B": B.to_list()}
    return MannReport(alpha, beta, sigma_C, box.n, box, repro)
