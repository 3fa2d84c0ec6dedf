from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from shnirelman.estimators import BasisOrder, ShnirelmanDensity, SumsetTransformer
from shnirelman.order_core import Box
from shnirelman.pointset import PointSet
from shnirelman.validation import as_pointset, check_box, check_points


def test_density_estimator():
    est = ShnirelmanDensity(m=20).fit([])
    odds = list(range(1, 21, 2))
    out = est.transform([odds, [2, 4], list(range(1, 21))])
    assert out.shape == (3, 1)
    assert list(out[:, 0]) == [Fraction(1, 2), 0, 1]
    assert est.score([odds, list(range(1, 21))]) == 0.75


def test_density_infers_box():
    X = [[(1, 0), (0, 1), (2, 1)], [(1, 1)]]
    est = ShnirelmanDensity().fit(X)
    assert est.box_ == Box((2, 1))
    assert est.family_size_ > 0
    assert est.report(X[0]).witness is not None


def test_params_and_clone():
    est = ShnirelmanDensity(m=(3, 3), cap=500)
    assert est.get_params() == {"m": (3, 3), "cap": 500}
    c = clone(est)
    assert c.get_params() == est.get_params() and not hasattr(c, "box_")
    assert SumsetTransformer(h=3).set_params(h=4).h == 4


def test_not_fitted():
    with pytest.raises(NotFittedError):
        ShnirelmanDensity().transform([[1]])
    with pytest.raises(NotFittedError):
        BasisOrder().predict([[1]])


def test_sumset_transformer():
    out = SumsetTransformer(addend=[1], m=10).fit_transform([[1, 2], [5]])
    assert [S.integers() for S in out] == [[1, 2, 3], [1, 5, 6]]
    out = SumsetTransformer(h=3, m=10).fit_transform([[3]])
    assert out[0].integers() == [3, 6, 9]
    with pytest.raises(ValueError):
        SumsetTransformer(h=0, m=10).fit([[1]])


def test_basis_order_estimator():
    est = BasisOrder(m=50).fit(list(range(1, 51, 2)))
    assert est.order_ == 2 and est.alpha_ == Fraction(1, 2)
    assert list(est.predict([list(range(2, 51, 2)), list(range(1, 51))])) == [-1, 1]


def test_validation_helpers():
    assert check_points([1, 2, 3]).shape == (3, 1)
    assert check_points([[1.0, 0.0]]).dtype.kind == "i"
    for bad in ([[0, 0]], [[-1, 2]], [[1.5, 0]], [[[1]]]):
        with pytest.raises(ValueError):
            check_points(bad)
    with pytest.raises(ValueError):
        check_points([[1, 0]], n=3)
    assert check_box(None, [[3, 1], [1, 2]]) == Box((3, 2))
    assert check_box(7) == Box.line(7)
    with pytest.raises(ValueError):
        check_box(None, [])
    with pytest.raises(ValueError):
        as_pointset(PointSet.empty(Box((2, 2))), Box((3, 3)))
    assert as_pointset(np.array([[1, 1]]), Box((2, 2))).points() == [(1, 1)]
