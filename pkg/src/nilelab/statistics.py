"""Sufficient statistics, ancillary statistics, and first-order ancillaries."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .families import FamilyModel, InputError, Kind, ObservationSet


class DegenerateSampleError(ValueError):
    """All observations equal where a positive spread is required (s = 0)."""


class InsufficientSampleError(ValueError):
    """Sample too small for the requested statistic."""


class StatId(enum.Enum):
    NILE_PRODUCT = "nile_product"          # W = xbar * ybar
    NORMAL_CV_RATIO = "normal_cv_ratio"    # W = xbar / s
    UNIFORM_RANGE = "uniform_range"        # W = x_(n) - x_(1)
    FIRST_ORDER_H = "first_order_h"
    POSITIVE_INDICATOR = "positive_indicator"
    STD_RESIDUALS = "std_residuals"


@dataclass(frozen=True)
class SufficientSummary:
    """Minimal sufficient statistic value for one sample.

    components by family:
      Nile                  (xbar, ybar)
      BivariateGaussianCorr (sum(x^2 + y^2), sum(x*y))
      NormalCV              (xbar, s)   with s the n-1 divisor standard deviation
      UniformLocation       (min, max)
    """

    kind: Kind
    components: tuple
    n: int

    def __post_init__(self):
        c = self.components
        if self.kind is Kind.NILE and not (c[0] > 0 and c[1] > 0):
            raise InputError("Nile sufficient components must be positive")
        if self.kind is Kind.NORMAL_CV and c[1] < 0:
            raise InputError("NormalCV s must be >= 0")
        if self.kind is Kind.UNIFORM_LOCATION and c[0] > c[1]:
            raise InputError("UniformLocation requires min <= max")


@dataclass(frozen=True)
class AncillaryValue:
    value: float
    stat_id: StatId

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise InputError("ancillary value must be finite")


def sufficient(obs: ObservationSet) -> SufficientSummary:
    """Family-dispatched minimal sufficient statistic."""
    kind = obs.model.kind
    pts = obs.points
    n = obs.n
    if kind is Kind.NILE:
        return SufficientSummary(kind, (float(pts[:, 0].mean()), float(pts[:, 1].mean())), n)
    if kind is Kind.BIVARIATE_GAUSSIAN_CORR:
        sq = float(np.sum(pts[:, 0] ** 2 + pts[:, 1] ** 2))
        cross = float(np.sum(pts[:, 0] * pts[:, 1]))
        return SufficientSummary(kind, (sq, cross), n)
    if kind is Kind.NORMAL_CV:
        if n < 2:
            raise InsufficientSampleError("NormalCV sufficient statistic needs n >= 2")
        s = float(np.std(pts, ddof=1))
        return SufficientSummary(kind, (float(pts.mean()), s), n)
    return SufficientSummary(kind, (float(pts.min()), float(pts.max())), n)


def ancillary(summary: SufficientSummary) -> AncillaryValue:
    """The family's canonical ancillary statistic, as a function of the summary."""
    if summary.kind is Kind.NILE:
        xbar, ybar = summary.components
        return AncillaryValue(xbar * ybar, StatId.NILE_PRODUCT)
    if summary.kind is Kind.NORMAL_CV:
        xbar, s = summary.components
        if s == 0.0:
            raise DegenerateSampleError("s = 0: degenerate sample")
        return AncillaryValue(xbar / s, StatId.NORMAL_CV_RATIO)
    if summary.kind is Kind.UNIFORM_LOCATION:
        lo, hi = summary.components
        return AncillaryValue(hi - lo, StatId.UNIFORM_RANGE)
    raise InputError(f"no scalar ancillary defined for {summary.kind}")


def first_order_h(x: float, y: float) -> int:
    """1{|x|<=1} + 1{|y|<=1}; symmetric in (x,y) and under joint sign flip."""
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InputError("non-finite point")
    return int(abs(x) <= 1.0) + int(abs(y) <= 1.0)


def positive_indicator(x: float) -> int:
    """1 if x > 0 else 0."""
    if not math.isfinite(x):
        raise InputError("non-finite value")
    return int(x > 0)


def residuals(obs: ObservationSet, standardized: bool = False) -> np.ndarray:
    """Residuals about the sample mean.

    Plain: the first n-1 residuals x_i - xbar (a maximal invariant for a
    location family).  Standardized: all n values (x_i - xbar)/s with the
    n-1 divisor s.
    """
    pts = np.asarray(obs.points, dtype=float)
    if pts.ndim != 1:
        raise InputError("residuals are defined for scalar samples")
    n = pts.shape[0]
    if n < 2:
        raise InsufficientSampleError("residuals need n >= 2")
    r = pts - pts.mean()
    if not standardized:
        return r[:-1]
    s = float(np.std(pts, ddof=1))
    if s == 0.0:
        raise DegenerateSampleError("s = 0: standardized residuals undefined")
    return r / s
