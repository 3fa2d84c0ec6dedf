"""The acceptance battery: eight randomized, exactly-checked criteria.

Each ``criterion_*`` function returns a :class:`CriterionResult`; a criterion
passes only if every check holds and it finishes inside its time budget.
Randomness comes from ``numpy.random.default_rng([seed, criterion])``.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _oracles as oracle
from .density import h0_for_half, sigma_1d, sigma_ideal_family
from .order_core import (Box, count_ideals, enumerate_ideals, ideal_masks, leq_lex, leq_rect,
                         OrderIdeal, open_interval_below, szpilrajn_extension, unit_vector)
from .pointset import PointSet, sumset
from .setgen import parse_and_build, random_set
from .theorems import (HOLDS, basis_order, cover_check, mann_check, partition_j_star,
                       pigeonhole_decompose, pigeonhole_decompose_1d, verify_shnirelman)

DEFAULT_SEED = 20240905


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.number}. {self.name} "
                f"({self.seconds:.2f}s / limit {self.limit:g}s) {json.dumps(self.details)}")

    def to_dict(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "seconds": round(self.seconds, 3), "limit": self.limit,
                "details": self.details, "failures": self.failures[:20]}


def _run(number, name, limit, body, seed):
    rng = np.random.default_rng([seed, number])
    failures: list = []
    details: dict = {}
    start = time.perf_counter()
    body(rng, failures, details)
    elapsed = time.perf_counter() - start
    return CriterionResult(number, name, not failures and elapsed < limit,
                           elapsed, limit, details, failures)


def _rand_box(rng, n, hi):
    return Box(tuple(int(rng.integers(1, hi + 1)) for _ in range(n)))


# -- 1 -----------------------------------------------------------------------


def _classical(rng, failures, details):
    odds = parse_and_build("odds", Box.line(100))
    if sigma_1d(odds).value != Fraction(1, 2):
        failures.append("sigma(odds, N=100) != 1/2")
    for N in range(1, 201):
        box = Box.line(N)
        if sigma_1d(parse_and_build("evens", box)).value != 0:
            failures.append(f"sigma(evens, N={N}) != 0")
        if sigma_1d(PointSet.full(box)).value != 1:
            failures.append(f"sigma(full, N={N}) != 1")
    positive = 0
    for _ in range(500):
        box = Box.line(int(rng.integers(1, 65)))
        A = random_set(box, rng.uniform(0.1, 0.95), rng, force_atoms=bool(rng.integers(2)))
        value = sigma_1d(A).value
        if value > 0:
            positive += 1
            if 1 not in A:
                failures.append(f"positive density without 1: {A.to_list()}")
        elif 1 in A:
            failures.append(f"1 in A but density 0: {A.to_list()}")
    details["positive_instances"] = positive


def criterion_classical(seed=DEFAULT_SEED):
    return _run(1, "classical density values", 1.0, _classical, seed)


# -- 2 -----------------------------------------------------------------------


def _small_boxes(limit=20):
    out = []

    def grow(prefix):
        size = 1
        for v in prefix:
            size *= v + 1
        if prefix:
            if size - 1 > limit:
                return
            out.append(tuple(prefix))
        for v in range(1, limit + 1):
            if size * (v + 1) - 1 > limit:
                break
            grow(prefix + [v])

    grow([])
    return out


def _order_machinery(rng, failures, details):
    checked = 0
    for n in (1, 2, 3):
        m = (4,) * n
        for x in oracle.cone_points(m):
            got = open_interval_below(x)
            if len(got) != oracle.interval_size_formula(x) or got != oracle.naive_interval(x, m):
                failures.append(f"interval (0, {x})")
            checked += 1
    details["intervals_checked"] = checked

    boxes = _small_boxes(20)
    for m in boxes:
        box = Box(m)
        got = [frozenset(J.elements) for J in enumerate_ideals(box)]
        expected = oracle.brute_force_ideals(m)
        if len(got) != len(set(got)) or set(got) != expected or count_ideals(box) != len(expected):
            failures.append(f"ideal enumeration differs on box {m}")
    details["boxes_enumerated"] = len(boxes)

    e1, e2 = (1, 0), (0, 1)
    if not leq_lex(e2, e1) or leq_rect(e2, e1):
        failures.append("e2 <=lex e1 but not e2 <= e1 fails")
    ext = szpilrajn_extension([e1, e2])
    if not ext.rank[e2] < ext.rank[e1]:
        failures.append("lex extension does not rank e2 below e1")
    for _ in range(10_000):
        n = int(rng.integers(1, 5))
        x = tuple(int(v) for v in rng.integers(-3, 4, n))
        y = tuple(int(v) for v in rng.integers(-3, 4, n))
        if leq_rect(x, y) and not leq_lex(x, y):
            failures.append(f"lex does not extend rect at {x}, {y}")
        if not (leq_lex(x, y) or leq_lex(y, x)):
            failures.append(f"lex not total at {x}, {y}")
    details["pairs_checked"] = 10_000


def criterion_order_machinery(seed=DEFAULT_SEED):
    return _run(2, "order machinery", 30.0, _order_machinery, seed)


# -- 3 -----------------------------------------------------------------------


def _shnirelman(rng, failures, details):
    refined = 0
    for i in range(500):
        n = 1 + i % 2
        box = Box.line(int(rng.integers(1, 65))) if n == 1 else _rand_box(rng, 2, 5)
        A = random_set(box, rng.uniform(0.2, 0.95), rng, force_atoms=bool(rng.integers(2)))
        B = random_set(box, rng.uniform(0.2, 0.95), rng, force_atoms=bool(rng.integers(2)))
        rep = verify_shnirelman(A, B)
        refined += rep.refined_checked
        if rep.sigma_C < rep.bound:
            failures.append({"global": True, "box": box.m, "A": A.to_list(), "B": B.to_list()})
        if rep.failing or rep.refined_failing:
            failures.append({"per_ideal": True, "box": box.m, "A": A.to_list(), "B": B.to_list()})
    details["instances"] = 500
    details["hypothesis_not_met"] = 0
    details["refined_checked"] = refined


def criterion_shnirelman(seed=DEFAULT_SEED):
    return _run(3, "Shnirel'man inequality", 300.0, _shnirelman, seed)


# -- 4 -----------------------------------------------------------------------


def _partition(rng, failures, details):
    J = OrderIdeal(frozenset((k,) for k in range(1, 6)))
    cert = partition_j_star(J, [(1,), (3,)])
    parts = [(b, sorted(p)) for b, p in cert.parts]
    if parts != [((1,), [(2,)]), ((3,), [(4,), (5,)])] or not cert.valid:
        failures.append(f"worked example gave {parts}")
    done = skipped = 0
    limits = {1: 12, 2: 4, 3: 2}
    while done < 200:
        n = 1 + done % 3
        box = _rand_box(rng, n, limits[n])
        masks = ideal_masks(box)
        J = OrderIdeal(frozenset(box.points_of(masks[int(rng.integers(len(masks)))])))
        B = random_set(box, rng.uniform(0.05, 0.7), rng, force_atoms=True)
        if J.elements <= set(B.points()):
            skipped += 1
            continue
        cert = partition_j_star(J, B)
        inv = cert.check()
        if not all(inv.values()):
            failures.append({"box": box.m, "J": J.to_list(), "B": B.to_list(), "invariants": inv})
        done += 1
    details["instances"] = done
    details["skipped_empty_J_star"] = skipped


def criterion_partition(seed=DEFAULT_SEED):
    return _run(4, "partition certificates", 60.0, _partition, seed)


# -- 5 -----------------------------------------------------------------------


def _dense_pair(rng, box, strict, force_atoms, tries=10_000):
    for _ in range(tries):
        A = random_set(box, rng.uniform(0.4, 1.0), rng, force_atoms=force_atoms)
        B = random_set(box, rng.uniform(0.4, 1.0), rng, force_atoms=force_atoms)
        a = sigma_ideal_family(A).value
        b = sigma_ideal_family(B).value
        if (a + b > 1) if strict else (a + b >= 1):
            return A, B, a, b
    raise RuntimeError("could not sample a pair meeting the density hypothesis")


def _pigeonhole(rng, failures, details):
    decomps = 0
    for i in range(200):
        box = Box.line(int(rng.integers(2, 65)))
        if i < 10:
            # boundary instances: density sum exactly one
            A = B = parse_and_build("odds", box)
            a = b = sigma_1d(A).value
        else:
            A, B, a, b = _dense_pair(rng, box, strict=False, force_atoms=False)
        if cover_check(A, B).verdict != HOLDS:
            failures.append({"1d_cover": box.m, "A": A.to_list(), "B": B.to_list()})
        for x in range(1, box.m[0] + 1):
            d = pigeonhole_decompose_1d(A, B, x, alpha=a, beta=b)
            ok = (d.a[0] + d.b[0] == x and (d.a[0] == 0 or d.a in A)
                  and (d.b[0] == 0 or d.b in B))
            if not ok:
                failures.append({"1d_decompose": x, "A": A.to_list(), "B": B.to_list()})
            decomps += 1
    details["decompositions_1d"] = decomps
    decomps = 0
    for i in range(200):
        n = 2 + i % 2
        box = _rand_box(rng, n, 4 if n == 2 else 2)
        A, B, a, b = _dense_pair(rng, box, strict=True, force_atoms=True)
        if cover_check(A, B).verdict != HOLDS:
            failures.append({"nd_cover": box.m, "A": A.to_list(), "B": B.to_list()})
        for x in box.cone_points():
            if sum(x) == 1:
                continue
            d = pigeonhole_decompose(A, B, x, alpha=a, beta=b)
            if not (d.a in A and d.b in B and tuple(p + q for p, q in zip(d.a, d.b)) == x):
                failures.append({"nd_decompose": x, "A": A.to_list(), "B": B.to_list()})
            decomps += 1
    details["decompositions_nd"] = decomps


def criterion_pigeonhole(seed=DEFAULT_SEED):
    return _run(5, "pigeonhole theorems", 120.0, _pigeonhole, seed)


# -- 6 -----------------------------------------------------------------------


def _basis(rng, failures, details):
    box = Box.line(32)
    if basis_order(parse_and_build("odds", box)).order != 2:
        failures.append("basis_order(odds, N=32) != 2")
    if basis_order(parse_and_build("evens", box), h_max=16).order is not None:
        failures.append("evens reported as a basis")
    worst = 0
    for i in range(100):
        n = 1 + i % 2
        box = Box.line(int(rng.integers(1, 65))) if n == 1 else _rand_box(rng, 2, 5)
        A = random_set(box, rng.uniform(0.2, 0.8), rng, force_atoms=True)
        rep = basis_order(A, h_max=16)
        if rep.alpha <= 0 or rep.order is None or rep.order > 2 * h0_for_half(rep.alpha):
            failures.append({"box": box.m, "A": A.to_list(), "order": rep.order,
                             "alpha": str(rep.alpha)})
        else:
            worst = max(worst, rep.order)
    details["max_order_seen"] = worst


def criterion_basis(seed=DEFAULT_SEED):
    return _run(6, "basis theorems", 120.0, _basis, seed)


# -- 7 -----------------------------------------------------------------------


def _kernel(rng, failures, details):
    box = Box.line(256)
    for _ in range(1000):
        A = random_set(box, rng.uniform(0, 1), rng)
        B = random_set(box, rng.uniform(0, 1), rng)
        if set(sumset(A, B).integers()) != oracle.naive_sumset_1d(A.integers(), B.integers(), 256):
            failures.append({"1d": True, "A": A.to_list(), "B": B.to_list()})
    box = Box((8, 8))
    for _ in range(300):
        A = random_set(box, rng.uniform(0, 1), rng)
        B = random_set(box, rng.uniform(0, 1), rng)
        if set(sumset(A, B).points()) != oracle.naive_sumset(A.points(), B.points(), box.m):
            failures.append({"2d": True, "A": A.to_list(), "B": B.to_list()})
    details["pairs"] = 1300


def criterion_kernel(seed=DEFAULT_SEED):
    return _run(7, "sumset kernel vs naive oracle", 60.0, _kernel, seed)


# -- 8 -----------------------------------------------------------------------

MANN_KEYS = {"theorem", "verdict", "asserted", "observation", "alpha", "beta",
             "sigma_sum", "bound", "reproduction"}


def _mann(rng, failures, details):
    for _ in range(500):
        box = Box.line(int(rng.integers(1, 65)))
        A = random_set(box, rng.uniform(0.1, 0.95), rng, force_atoms=bool(rng.integers(2)))
        B = random_set(box, rng.uniform(0.1, 0.95), rng, force_atoms=bool(rng.integers(2)))
        rep = mann_check(A, B)
        if rep.verdict != HOLDS:
            failures.append({"box": box.m, "A": A.to_list(), "B": B.to_list()})
    candidates = 0
    for _ in range(100):
        box = _rand_box(rng, 2, 4)
        A = random_set(box, rng.uniform(0.2, 0.95), rng, force_atoms=bool(rng.integers(2)))
        B = random_set(box, rng.uniform(0.2, 0.95), rng, force_atoms=bool(rng.integers(2)))
        d = mann_check(A, B).to_dict()
        try:
            json.dumps(d)
        except TypeError:
            failures.append("2D report not JSON serialisable")
        if not MANN_KEYS <= d.keys() or d["asserted"]:
            failures.append(f"malformed 2D report: {sorted(d)}")
        candidates += d["observation"] == "candidate-observation"
    details["mann_1d_instances"] = 500
    details["explorer_2d_instances"] = 100
    details["explorer_2d_candidates"] = candidates


def criterion_mann(seed=DEFAULT_SEED):
    return _run(8, "Mann bound and explorer", 180.0, _mann, seed)


CRITERIA = [criterion_classical, criterion_order_machinery, criterion_shnirelman,
            criterion_partition, criterion_pigeonhole, criterion_basis,
            criterion_kernel, criterion_mann]


def run_all(seed=DEFAULT_SEED, echo=None) -> list[CriterionResult]:
    results = []
    for crit in CRITERIA:
        res = crit(seed)
        if echo:
            echo(res.line())
        results.append(res)
    return results
