"""scikit-learn style wrappers.

``fit`` fixes the box (inferred from the data when ``m`` is None) and, for
the density estimator, its ideal family; ``transform`` maps a list of point
sets to exact densities or sumsets. Parameters follow the estimator
conventions so ``get_params``/``set_params``/``clone`` work.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .density import DensityReport, min_ratio
from .order_core import DEFAULT_IDEAL_CAP, OrderIdeal, ideal_masks
from .pointset import PointSet, hfold, sumset
from .theorems import basis_order
from .validation import as_pointset, check_box, check_points


def _infer_box(m, sets):
    if m is not None:
        return check_box(m)
    boxes = {S.box for S in sets if isinstance(S, PointSet)}
    if len(boxes) == 1 and all(isinstance(S, PointSet) for S in sets):
        return boxes.pop()
    arrays = [check_points(S.points() if isinstance(S, PointSet) else S) for S in sets]
    arrays = [a for a in arrays if len(a)]
    return check_box(None, np.vstack(arrays) if arrays else None)


class ShnirelmanDensity(TransformerMixin, BaseEstimator):
    """Box-relative density of point sets.

    Parameters
    ----------
    m : int, sequence of int or None
        Box bounds. None infers the smallest box holding every fitted set.
    cap : int
        Largest ideal family the box may have.
    """

    def __init__(self, m=None, cap=DEFAULT_IDEAL_CAP):
        self.m = m
        self.cap = cap

    def fit(self, X, y=None):
        self.box_ = _infer_box(self.m, list(X))
        self.masks_ = ideal_masks(self.box_, self.cap)
        self.family_size_ = len(self.masks_)
        return self

    def report(self, S) -> DensityReport:
        check_is_fitted(self, "masks_")
        S = as_pointset(S, self.box_)
        c, s, i = min_ratio(S.mask, self.masks_)
        witness = OrderIdeal(frozenset(self.box_.points_of(self.masks_[i])))
        return DensityReport(Fraction(c, s), witness, self.family_size_, self.box_)

    def transform(self, X):
        """Column of exact densities (``Fraction`` objects), one row per set."""
        out = np.empty((len(X), 1), dtype=object)
        for k, S in enumerate(X):
            out[k, 0] = self.report(S).value
        return out

    def score(self, X, y=None):
        """Mean density as a float (the usual estimator scoring hook)."""
        vals = self.transform(X)[:, 0]
        return float(sum(vals) / len(vals)) if len(vals) else 0.0


class SumsetTransformer(TransformerMixin, BaseEstimator):
    """Maps each set ``S`` to ``S + addend``, or to ``hS`` when ``addend`` is None."""

    def __init__(self, addend=None, h=2, m=None):
        self.addend = addend
        self.h = h
        self.m = m

    def fit(self, X, y=None):
        X = list(X)
        extra = [] if self.addend is None else [self.addend]
        self.box_ = _infer_box(self.m, X + extra)
        if self.addend is None:
            if int(self.h) < 1:
                raise ValueError("h must be a positive integer")
            self.addend_ = None
        else:
            self.addend_ = as_pointset(self.addend, self.box_)
        return self

    def transform(self, X):
        check_is_fitted(self, "box_")
        out = []
        for S in X:
            S = as_pointset(S, self.box_)
            out.append(hfold(S, int(self.h)) if self.addend_ is None else sumset(S, self.addend_))
        return out


class BasisOrder(BaseEstimator):
    """Least ``h`` with ``hA`` covering the box; ``predict`` gives -1 for no basis."""

    def __init__(self, h_max=16, m=None, cap=DEFAULT_IDEAL_CAP):
        self.h_max = h_max
        self.m = m
        self.cap = cap

    def fit(self, X, y=None):
        self.box_ = _infer_box(self.m, [X])
        self.report_ = basis_order(as_pointset(X, self.box_), h_max=self.h_max, cap=self.cap)
        self.order_ = self.report_.order
        self.alpha_ = self.report_.alpha
        return self

    def predict(self, X):
        check_is_fitted(self, "box_")
        orders = []
        for S in X:
            rep = basis_order(as_pointset(S, self.box_), h_max=self.h_max, cap=self.cap)
            orders.append(-1 if rep.order is None else rep.order)
        return np.array(orders, dtype=int)
