"""Exact metrics on lattice knots: taxicab distance, arc length, and the
distortion ratios built from them.

Every quantity is an exact rational.  The Euclidean comparator is only
ever handled through its square, which keeps all comparisons decidable
in integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

from .lattice import LatticeKnot, LatticePoint

# Exact nonnegative rational in canonical form; cross-multiplied total order.
Ratio = Fraction


class NotOnKnotError(ValueError):
    """A queried point is neither a vertex nor a midpoint of the knot."""


class ArcPosition(NamedTuple):
    """A point of the knot together with its cyclic arc offset.

    Offsets are in doubled arc units (half-edges), in [0, 2n): vertices
    at even offsets, midpoints at odd offsets.
    """

    point: LatticePoint
    offset: int


PointLike = Union[LatticePoint, ArcPosition]


def taxicab_doubled(a: LatticePoint, b: LatticePoint) -> int:
    return abs(a.x - b.x) + abs(a.y - b.y) + abs(a.z - b.z)


def euclidean_sq_doubled(a: LatticePoint, b: LatticePoint) -> int:
    return (a.x - b.x) ** 2 + (a.y - b.y) ** 2 + (a.z - b.z) ** 2


def taxicab_distance(a: LatticePoint, b: LatticePoint) -> Fraction:
    """Taxicab (L1) distance in true units."""
    return Fraction(taxicab_doubled(a, b), 2)


def arc_position(knot: LatticeKnot, p: PointLike) -> ArcPosition:
    """Locate a vertex or midpoint on the knot."""
    if isinstance(p, ArcPosition):
        return p
    off = knot.offset_table.get(p)
    if off is None:
        raise NotOnKnotError(f"{p!r} is not a vertex or midpoint of this knot")
    return ArcPosition(p, off)


def arc_distance_doubled(knot: LatticeKnot, a: PointLike, b: PointLike) -> int:
    pa = arc_position(knot, a)
    pb = arc_position(knot, b)
    diff = abs(pa.offset - pb.offset)
    return min(diff, 2 * knot.n - diff)


def arc_distance(knot: LatticeKnot, a: PointLike, b: PointLike) -> Fraction:
    """Shortest path length along the knot, in true units."""
    return Fraction(arc_distance_doubled(knot, a, b), 2)


def distortion_ratio(knot: LatticeKnot, a: PointLike, b: PointLike) -> Fraction:
    """Arc length over taxicab distance, with value 1 on the diagonal."""
    pa = arc_position(knot, a)
    pb = arc_position(knot, b)
    if pa.point == pb.point:
        return Fraction(1)
    # doubled units cancel in the quotient
    return Fraction(
        arc_distance_doubled(knot, pa, pb), taxicab_doubled(pa.point, pb.point)
    )


def euclidean_ratio_squared(knot: LatticeKnot, a: PointLike, b: PointLike) -> Fraction:
    """Square of arc length over Euclidean distance between distinct points.

    Squaring keeps the value rational; callers compare such squares by
    cross-multiplication.  The diagonal is rejected (the unsquared ratio
    is 1 there by convention, handled by callers).
    """
    pa = arc_position(knot, a)
    pb = arc_position(knot, b)
    if pa.point == pb.point:
        raise ValueError("euclidean ratio is only defined for distinct points")
    # arc_true^2 = (arc_doubled/2)^2 and d_true^2 = e2_doubled/4, so the
    # factors of 4 cancel exactly.
    return Fraction(
        arc_distance_doubled(knot, pa, pb) ** 2,
        euclidean_sq_doubled(pa.point, pb.point),
    )
