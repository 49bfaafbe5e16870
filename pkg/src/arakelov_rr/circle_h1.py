"""Finite subsets of the dyadic circle and the H1 dimension.

Points live on R/Z as exact Fractions in [0, 1).  A finite pointed family
generates the lambda-coarsened circle when its subset sums come within
lambda of every point; the workhorse family F(m) consists of the m points
2**-j shifted alternately across 0, whose subset sums are exactly the
2**m multiples of 2**-m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DomainError, OutOfRangeError, SizeCapError
from .gamma import EMPTY_SUM

#: Cap on exhaustive subset-sum enumeration (2**m sums).
SUBSET_SUM_CAP = 24


def circle_point(value) -> Fraction:
    """Reduce an exact rational to its representative in [0, 1)."""
    if isinstance(value, float):
        raise DomainError("circle points must be exact rationals, not floats")
    q = Fraction(value)
    return q - math.floor(q)


def circle_distance(x, y) -> Fraction:
    """Arc distance on R/Z: min(|x - y|, 1 - |x - y|) after reduction."""
    d = abs(circle_point(x) - circle_point(y))
    return min(d, 1 - d)


def f_generators(m: int) -> tuple[Fraction, ...]:
    """The family F(m): for j = 1..m, the point -(-2)**-j reduced mod 1.

    Odd j gives 1 - 2**-j, even j gives 2**-j.  Its 2**m subset sums are
    exactly the multiples of 2**-m (see subset_sums); that is the
    smallest family with this span, by counting.
    """
    if m < 0:
        raise OutOfRangeError("m must be nonnegative")
    points = []
    for j in range(1, m + 1):
        if j % 2:
            points.append(1 - Fraction(1, 2 ** j))
        else:
            points.append(Fraction(1, 2 ** j))
    return tuple(points)


def subset_sums(points: Sequence[Fraction], cap: int = SUBSET_SUM_CAP) -> frozenset:
    """All subset sums of the family, reduced mod 1 (empty sum included)."""
    if len(points) > cap:
        raise SizeCapError(
            f"subset sums would enumerate 2**{len(points)}; cap is 2**{cap}"
        )
    sums = {circle_point(EMPTY_SUM)}
    for p in points:
        p = circle_point(p)
        sums |= {circle_point(s + p) for s in sums}
    return frozenset(sums)


def covering_radius(points: Iterable[Fraction]) -> Fraction:
    """Largest arc distance from any circle point to the set: half the
    widest cyclic gap between consecutive points."""
    pts = sorted({circle_point(p) for p in points})
    if not pts:
        raise DomainError("covering radius of an empty set is infinite")
    if len(pts) == 1:
        return Fraction(1, 2)
    widest = max(
        [pts[i + 1] - pts[i] for i in range(len(pts) - 1)] + [1 - pts[-1] + pts[0]]
    )
    return widest / 2


def min_separation(points: Iterable[Fraction]) -> Fraction:
    """Smallest pairwise arc distance (distinct points required).

    On a sorted circle the minimum is attained by cyclically adjacent
    points (any other pair is separated by a sum of gaps on both sides),
    so a single linear sweep suffices.
    """
    pts = sorted({circle_point(p) for p in points})
    if len(pts) < 2:
        raise DomainError("separation needs at least two distinct points")
    gaps = [pts[i + 1] - pts[i] for i in range(len(pts) - 1)]
    gaps.append(1 - pts[-1] + pts[0])
    return min(gaps)


def _checked_lambda(lam) -> Fraction:
    if isinstance(lam, float):
        raise DomainError("lambda must be an exact rational, not a float")
    lam = Fraction(lam)
    if lam <= 0:
        raise DomainError("lambda must be positive")
    return lam


def is_generating(points: Sequence[Fraction], lam, cap: int = SUBSET_SUM_CAP) -> bool:
    """Whether the family generates the lambda-coarsened circle.

    Two conditions: the family itself is faithfully separated (pairwise
    arc distance strictly above lambda, vacuous for at most one point),
    and its subset sums come within lambda of every circle point.  The
    boundary is closed: covering radius exactly lambda still generates.
    """
    lam = _checked_lambda(lam)
    pts = tuple(points)
    if len(pts) > 1 and min_separation(pts) <= lam:
        return False
    return covering_radius(subset_sums(pts, cap)) <= lam


def lower_bound_cardinality(lam) -> int:
    """Least k with 2**k * (2 * lam) >= 1: k points yield at most 2**k
    subset sums, and that many closed arcs of radius lam must cover the
    circle of circumference 1."""
    lam = _checked_lambda(lam)
    k = 0
    while 2 * lam * 2 ** k < 1:
        k += 1
    return k


@dataclass(frozen=True)
class CircleCertificate:
    """Exact audit of the family F(m) at its critical coarsening."""

    m: int
    lam: Fraction
    family: tuple[Fraction, ...]
    sum_count: int
    sums_are_dyadic_grid: bool
    covering: Fraction
    separation: Optional[Fraction]
    cardinality_bound: int
    generating: bool

    @property
    def passed(self) -> bool:
        return (
            self.generating
            and self.sums_are_dyadic_grid
            and self.sum_count == 2 ** self.m
            and self.cardinality_bound == len(self.family)
        )


def certify_family(m: int, cap: int = SUBSET_SUM_CAP) -> CircleCertificate:
    """Certify F(m) at lam = 2**-(m+1): its 2**m subset sums are exactly
    the multiples of 2**-m, the covering radius is exactly lam, and no
    smaller family could cover (counting bound)."""
    if m < 1:
        raise OutOfRangeError("m must be positive")
    lam = Fraction(1, 2 ** (m + 1))
    family = f_generators(m)
    sums = subset_sums(family, cap)
    grid = frozenset(Fraction(i, 2 ** m) for i in range(2 ** m))
    return CircleCertificate(
        m=m,
        lam=lam,
        family=family,
        sum_count=len(sums),
        sums_are_dyadic_grid=sums == grid,
        covering=covering_radius(sums),
        separation=min_separation(family) if m >= 2 else None,
        cardinality_bound=lower_bound_cardinality(lam),
        generating=is_generating(family, lam, cap),
    )


def dim_h1(deg2) -> int:
    """Dimension at degree deg2 (log2 units): 0 at and above degree -1,
    and m on the window [-m - 1, -m).

    Accepts an exact rational or any degree carrier exposing floor().
    """
    if isinstance(deg2, bool) or isinstance(deg2, float):
        raise DomainError("degree must be an exact rational or degree carrier")
    if isinstance(deg2, (int, Fraction)):
        fl = math.floor(Fraction(deg2))
    else:
        fl = deg2.floor()
    return max(0, -fl - 1)
