import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shnirelman.density import sigma_ideal_family
from shnirelman.order_core import Box, ConeContext, OrderIdeal, downward_closure, ideal_masks
from shnirelman.pointset import PointSet, sumset
from shnirelman.setgen import parse_and_build, random_set
from shnirelman.theorems import (HOLDS, NOT_MET, VIOLATED, Decomposition, HypothesisNotMet,
                                 basis_order, cover_check, mann_check, partition_j_star,
                                 pigeonhole_decompose, pigeonhole_decompose_1d,
                                 verify_product_bound, verify_shnirelman)


def line(N, xs):
    return PointSet.from_points(xs, Box.line(N))


def prefix(k):
    return OrderIdeal(frozenset((i,) for i in range(1, k + 1)))


# -- partition ---------------------------------------------------------------


def test_partition_worked_example():
    cert = partition_j_star(prefix(5), [(1,), (3,)])
    assert [(b, sorted(p)) for b, p in cert.parts] == [((1,), [(2,)]), ((3,), [(4,), (5,)])]
    assert [sorted(cert.translate(b, p)) for b, p in cert.parts] == [[(1,)], [(1,), (2,)]]
    assert cert.valid


def test_partition_2d_example():
    J = downward_closure([(1, 1)])
    cert = partition_j_star(J, [(1, 0), (0, 1)])
    assert cert.parts == [((1, 0), frozenset({(1, 1)}))]
    assert cert.translate((1, 0), {(1, 1)}) == {(0, 1)}
    assert cert.valid


def test_partition_topological_extension_also_valid():
    J = downward_closure([(2, 2)])
    B = [(1, 0), (0, 1), (1, 1)]
    for ext in ("lex", "topological"):
        cert = partition_j_star(J, B, ConeContext(2, extension=ext))
        assert cert.valid
        assert cert.to_dict()["extension"] == ext


def test_partition_hypotheses():
    with pytest.raises(HypothesisNotMet):
        partition_j_star(prefix(3), [(1,), (2,), (3,)])  # J* empty
    with pytest.raises(HypothesisNotMet):
        partition_j_star(prefix(3), [(2,)])  # nothing of B below 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_partition_invariants_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 4))
    box = Box(tuple(int(v) for v in rng.integers(1, 4 if n > 1 else 12, size=n)))
    masks = ideal_masks(box)
    J = OrderIdeal(frozenset(box.points_of(masks[int(rng.integers(len(masks)))])))
    B = random_set(box, rng.uniform(0.1, 0.7), rng, force_atoms=True)
    if J.elements <= set(B.points()):
        return
    inv = partition_j_star(J, B).check()
    assert all(inv.values()), inv


def test_certificate_check_catches_bad_parts():
    cert = partition_j_star(prefix(5), [(1,), (3,)])
    cert.parts = [((1,), frozenset({(2,), (4,)})), ((3,), frozenset({(5,)}))]
    inv = cert.check()
    assert not inv["translates_downward_closed"]
    assert not cert.valid


# -- pigeonhole and cover ----------------------------------------------------


def test_pigeonhole_1d_odds():
    box = Box.line(30)
    odds = parse_and_build("odds", box)
    for x in range(1, 31):
        d = pigeonhole_decompose_1d(odds, odds, x)
        assert d.a[0] + d.b[0] == x
        assert (d.a[0] == 0 or d.a[0] in odds.integers()) and (d.b[0] == 0 or d.b[0] in odds)
    assert pigeonhole_decompose_1d(odds, odds, 7) == Decomposition((7,), (0,), True)
    assert pigeonhole_decompose_1d(odds, odds, 8) == Decomposition((1,), (7,), False)


def test_pigeonhole_1d_hypothesis():
    evens = parse_and_build("evens", Box.line(10))
    with pytest.raises(HypothesisNotMet):
        pigeonhole_decompose_1d(evens, evens, 5)


def test_pigeonhole_nd():
    box = Box((3, 3))
    A = PointSet.full(box) - PointSet.from_points([(3, 3)], box)
    d = pigeonhole_decompose(A, A, (3, 3))
    assert tuple(a + b for a, b in zip(d.a, d.b)) == (3, 3)
    assert d.a in A and d.b in A
    with pytest.raises(ValueError):
        pigeonhole_decompose(A, A, (1, 0))


def test_pigeonhole_nd_needs_strict_sum():
    box = Box((2, 2))
    half = PointSet.from_points([(1, 0), (0, 1), (2, 0), (0, 2)], box)
    assert sigma_ideal_family(half).value == Fraction(1, 2)
    with pytest.raises(HypothesisNotMet):
        pigeonhole_decompose(half, half, (2, 2))


def test_cover_examples():
    box = Box.line(50)
    odds = parse_and_build("odds", box)
    rep = cover_check(odds, odds)
    assert rep.verdict == HOLDS and rep.theorem == "shnirelman-pigeonhole"
    assert cover_check(parse_and_build("evens", box), odds).verdict == NOT_MET
    box2 = Box((2, 2))
    full = PointSet.full(box2)
    rep = cover_check(full, full)
    assert rep.verdict == HOLDS and rep.hypotheses["atoms_in_union"]
    # sum exactly one: the lattice version wants it strict
    rep = cover_check(full, PointSet.empty(box2))
    assert rep.verdict == NOT_MET and not rep.hypotheses["density_sum_above_one"]
    no_atoms = full - PointSet.from_points([(1, 0)], box2)
    assert cover_check(no_atoms, no_atoms).verdict == NOT_MET


# -- inequality, product bound, basis ----------------------------------------


def test_shnirelman_example():
    box = Box.line(20)
    A = line(20, [1, 4, 5, 9])
    B = line(20, [1, 2, 7])
    rep = verify_shnirelman(A, B)
    assert rep.verdict == HOLDS
    assert rep.bound == rep.alpha + rep.beta - rep.alpha * rep.beta
    assert rep.refined_checked
    assert rep.sigma_C == sigma_ideal_family(sumset(A, B)).value
    d = rep.to_dict(include_margins=True)
    json.dumps(d)
    assert len(d["per_ideal_margins"]) == 20 and box.m == (20,)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_shnirelman_random_nd(seed):
    rng = np.random.default_rng(seed)
    box = Box((int(rng.integers(1, 4)), int(rng.integers(1, 4))))
    A = random_set(box, rng.uniform(0.2, 0.9), rng, force_atoms=rng.random() < 0.7)
    B = random_set(box, rng.uniform(0.2, 0.9), rng, force_atoms=True)
    rep = verify_shnirelman(A, B)
    assert rep.verdict == HOLDS
    assert rep.refined_checked and not rep.refined_failing
    assert all(m >= 0 for m in rep.per_ideal_margins.values())


def test_product_bound():
    box = Box((2, 2))
    sets = [parse_and_build("random:p=0.6,atoms=yes", box, seed=k) for k in range(3)]
    rep = verify_product_bound(sets)
    assert rep.verdict == HOLDS and rep.atoms_in_every_set
    assert rep.lhs <= rep.rhs
    with pytest.raises(ValueError):
        verify_product_bound(sets[:1])


def test_basis_odds_and_full():
    odds = parse_and_build("odds", Box.line(100))
    rep = basis_order(odds)
    assert rep.order == 2 and rep.h0 == 1 and rep.verdict == HOLDS
    assert basis_order(PointSet.full(Box((3, 3)))).order == 1


def test_basis_zero_density():
    rep = basis_order(parse_and_build("evens", Box.line(50)))
    assert rep.order is None and rep.verdict == NOT_MET


def test_basis_squares():
    rep = basis_order(parse_and_build("squares", Box.line(200)), h_max=8)
    assert rep.order == 4  # 7 and 15, 23, ... need four squares
    assert rep.verdict == HOLDS


def test_basis_unreached_bound_is_not_met():
    A = line(100, [1] + list(range(50, 101)))
    rep = basis_order(A, h_max=2)
    assert rep.order is None
    assert rep.verdict == (VIOLATED if rep.h_max >= rep.bound else NOT_MET)


# -- Mann --------------------------------------------------------------------


def test_mann_1d_asserted():
    box = Box.line(40)
    rep = mann_check(line(40, [1, 3, 4, 8]), parse_and_build("odds", box))
    assert rep.asserted and rep.verdict == HOLDS
    assert rep.to_dict()["observation"] == "asserted"


def test_mann_nd_is_explorer():
    box = Box((2, 2))
    rep = mann_check(PointSet.full(box), PointSet.full(box))
    assert not rep.asserted and rep.observation == "consistent"
    assert rep.to_dict()["theorem"] == "mann-explorer"
    assert rep.bound == Fraction(1)
