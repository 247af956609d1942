"""Shared fixtures and the from-scratch reference oracle.

The reference implementations here recompute everything from raw true
coordinates with plain loops and Fractions; they share no code with the
banded engine they are used to check.
"""

from fractions import Fraction

import pytest

from knotdist import LatticeKnot, random_polygon, rectangle, torus_knot


def reference_vertex_distortion(true_vertices):
    """Independent O(n^2) maximum of arc/taxicab over vertex pairs."""
    n = len(true_vertices)
    best = Fraction(1)
    witnesses = set()
    for i in range(n):
        for j in range(i + 1, n):
            arc = min(j - i, n - (j - i))
            d1 = sum(abs(a - b) for a, b in zip(true_vertices[i], true_vertices[j]))
            r = Fraction(arc, d1)
            if r > best:
                best = r
                witnesses = set()
            if r == best:
                witnesses.add(
                    tuple(sorted((tuple(true_vertices[i]), tuple(true_vertices[j]))))
                )
    return best, witnesses


def reference_euclidean_bound(true_vertices):
    """Independent max of squared arc/Euclidean over vertex pairs."""
    n = len(true_vertices)
    best = Fraction(0)
    for i in range(n):
        for j in range(i + 1, n):
            arc = min(j - i, n - (j - i))
            d2 = sum((a - b) ** 2 for a, b in zip(true_vertices[i], true_vertices[j]))
            best = max(best, Fraction(arc * arc, d2))
    return best


def witness_true_pairs(report):
    """Engine witnesses as sorted pairs of true coordinate tuples."""
    out = set()
    for a, b in report.witnesses:
        ta = tuple(c // 2 for c in a)
        tb = tuple(c // 2 for c in b)
        out.add(tuple(sorted((ta, tb))))
    return out


@pytest.fixture(scope="session")
def unit_square() -> LatticeKnot:
    return rectangle(1, 1)


@pytest.fixture(scope="session")
def skew_hexagon() -> LatticeKnot:
    # the nonplanar six-edge polygon around a cube corner
    return LatticeKnot.from_true(
        [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1), (0, 0, 1)]
    )


@pytest.fixture(scope="session")
def trefoil() -> LatticeKnot:
    return torus_knot(2, 3, 2)


@pytest.fixture(scope="session")
def small_corpus() -> list[LatticeKnot]:
    """A quick mixed corpus for unit-level property checks."""
    knots = [rectangle(m, n) for m in range(1, 4) for n in range(1, 4)]
    knots += [random_polygon(length, seed) for length, seed in
              [(4, 1), (8, 2), (12, 3), (16, 4), (20, 5), (24, 6)]]
    knots.append(
        LatticeKnot.from_true(
            [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1), (0, 0, 1)]
        )
    )
    return knots
