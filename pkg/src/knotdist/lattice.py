"""Exact data model for lattice knots.

A lattice knot is a closed, embedded polygon whose edges are unit
axis-parallel segments of the cubic lattice.  Every coordinate in this
package is stored *doubled* (true coordinate times 2) so that edge
midpoints are ordinary integers and the whole pipeline stays in exact
integer arithmetic.  A vertex therefore has three even components and a
midpoint has exactly one odd component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

# Doubled coordinates must stay inside signed 64-bit range; arithmetic on
# Python ints never wraps, so exceeding this is reported, never silent.
COORD_LIMIT = 2**63 - 1


class Axis(IntEnum):
    X = 0
    Y = 1
    Z = 2


class LatticePoint(NamedTuple):
    """A point of the cubic lattice in doubled coordinates."""

    x: int
    y: int
    z: int

    @classmethod
    def vertex(cls, x: int, y: int, z: int = 0) -> "LatticePoint":
        """Build a lattice vertex from true integer coordinates."""
        return cls(2 * x, 2 * y, 2 * z)

    @property
    def is_vertex(self) -> bool:
        return self.x % 2 == 0 and self.y % 2 == 0 and self.z % 2 == 0

    @property
    def is_midpoint(self) -> bool:
        return (self.x % 2 + self.y % 2 + self.z % 2) == 1

    @property
    def odd_axis(self) -> Optional[Axis]:
        """Axis of the single half-integer coordinate, None for vertices."""
        odd = [a for a in Axis if self[a] % 2]
        return odd[0] if len(odd) == 1 else None

    def as_true(self) -> tuple:
        """True coordinates: ints where integral, halves otherwise."""
        return tuple(c // 2 if c % 2 == 0 else c / 2 for c in self)

    def __repr__(self) -> str:
        return "LatticePoint%r" % (self.as_true(),)


class Edge(NamedTuple):
    """Unit segment between consecutive vertices of a knot."""

    index: int
    start: LatticePoint
    end: LatticePoint
    axis: Axis
    midpoint: LatticePoint


class Stick(NamedTuple):
    """Maximal straight segment of a knot; length in true units."""

    axis: Axis
    start: LatticePoint
    end: LatticePoint
    length: int


class Violation(NamedTuple):
    code: str
    where: tuple
    message: str


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    violations: tuple[Violation, ...]

    def __bool__(self) -> bool:
        return self.ok

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


class InvalidKnotError(ValueError):
    """Raised when a vertex sequence fails the lattice knot invariants."""

    def __init__(self, result: ValidationResult):
        self.result = result
        lines = "; ".join(v.message for v in result.violations)
        super().__init__(f"invalid lattice knot: {lines}")


TrueVertex = tuple[int, int, int]


def validate(vertices: Sequence[TrueVertex]) -> ValidationResult:
    """Check a sequence of true integer coordinates against the knot invariants.

    Returns a ValidationResult whose violations name the failed invariant
    and the offending index or pair.  Never raises: violations are data.
    """
    vs = [tuple(int(c) for c in v) for v in vertices]
    n = len(vs)
    violations: list[Violation] = []
    if n < 4:
        violations.append(
            Violation("too_short", (n,), f"{n} vertices; a lattice knot needs at least 4")
        )
    if n % 2:
        violations.append(
            Violation("odd_length", (n,), f"{n} edges; closed lattice polygons have even length")
        )
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        step = sum(abs(a[k] - b[k]) for k in range(3))
        if step != 1:
            violations.append(
                Violation(
                    "not_closed",
                    (i, (i + 1) % n),
                    f"vertices {i} and {(i + 1) % n} are not joined by a unit lattice step",
                )
            )
    seen: dict[TrueVertex, int] = {}
    for i, v in enumerate(vs):
        if v in seen:
            violations.append(
                Violation(
                    "not_embedded",
                    (seen[v], i),
                    f"vertex {i} repeats vertex {seen[v]} at {v}",
                )
            )
        else:
            seen[v] = i
    for i, v in enumerate(vs):
        if any(abs(2 * c) > COORD_LIMIT for c in v):
            violations.append(
                Violation("out_of_range", (i,), f"vertex {i} exceeds the coordinate range")
            )
    return ValidationResult(not violations, tuple(violations))


@dataclass(frozen=True)
class LatticeKnot:
    """Ordered cyclic vertex sequence of a lattice knot, doubled coordinates.

    Instances are immutable and hashable; all derived structure (edges,
    arc offsets) is cached lazily.  Construct through :meth:`from_true`,
    the generators, or the file parser, which all validate.
    """

    vertices: tuple[LatticePoint, ...]

    @classmethod
    def from_true(cls, vertices: Iterable[TrueVertex]) -> "LatticeKnot":
        """Validate true integer coordinates and build the knot."""
        vs = list(vertices)
        result = validate(vs)
        if not result:
            raise InvalidKnotError(result)
        return cls(tuple(LatticePoint.vertex(*v) for v in vs))

    @property
    def n(self) -> int:
        """Number of edges (equals number of vertices)."""
        return len(self.vertices)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        out = []
        n = self.n
        for i, a in enumerate(self.vertices):
            b = self.vertices[(i + 1) % n]
            axis = next(ax for ax in Axis if a[ax] != b[ax])
            mid = LatticePoint(*((a[k] + b[k]) // 2 for k in range(3)))
            out.append(Edge(i, a, b, axis, mid))
        return tuple(out)

    @cached_property
    def offset_table(self) -> dict[LatticePoint, int]:
        """Point -> arc offset in doubled arc units, over vertices and midpoints.

        Vertices sit at even offsets 2i, the midpoint of edge i at 2i + 1;
        the full cycle has 2n doubled units (true length n).
        """
        table: dict[LatticePoint, int] = {}
        for i, v in enumerate(self.vertices):
            table[v] = 2 * i
        for e in self.edges:
            table[e.midpoint] = 2 * e.index + 1
        return table

    @cached_property
    def edge_of_midpoint(self) -> dict[LatticePoint, Edge]:
        return {e.midpoint: e for e in self.edges}

    def true_vertices(self) -> list[TrueVertex]:
        return [(v.x // 2, v.y // 2, v.z // 2) for v in self.vertices]

    def __repr__(self) -> str:
        return f"LatticeKnot(n={self.n}, start={self.vertices[0]!r})"


def midpoints(knot: LatticeKnot) -> tuple[LatticePoint, ...]:
    """Edge midpoints in cyclic order, one per edge."""
    return tuple(e.midpoint for e in knot.edges)


def decompose_sticks(knot: LatticeKnot) -> tuple[Stick, ...]:
    """Partition the knot into maximal straight segments, in cyclic order.

    The first stick reported is the one starting at the first direction
    change at or after vertex 0, so the decomposition is deterministic.
    """
    edges = knot.edges
    n = len(edges)
    start = next(i for i in range(n) if edges[i].axis != edges[i - 1].axis)
    sticks = []
    i = start
    while i < start + n:
        axis = edges[i % n].axis
        run = 1
        while run < n and edges[(i + run) % n].axis == axis:
            run += 1
        sticks.append(
            Stick(axis, edges[i % n].start, edges[(i + run - 1) % n].end, run)
        )
        i += run
    return tuple(sticks)


def scale(knot: LatticeKnot, m: int) -> LatticeKnot:
    """Multiply all coordinates by m, inserting the intermediate vertices.

    The result is again a valid lattice knot with m times as many edges.
    m = 0 is rejected; coordinates leaving the 64-bit range raise
    OverflowError rather than wrapping.
    """
    if m < 1:
        raise ValueError(f"scale factor must be a positive integer, got {m}")
    if m == 1:
        return knot
    peak = max(max(abs(c) for c in v) for v in knot.vertices)
    if peak * m > COORD_LIMIT:
        raise OverflowError(
            f"scaling by {m} pushes coordinates past the 64-bit limit"
        )
    out: list[LatticePoint] = []
    n = knot.n
    for i, a in enumerate(knot.vertices):
        b = knot.vertices[(i + 1) % n]
        step = tuple(b[k] - a[k] for k in range(3))  # doubled unit step
        base = tuple(a[k] * m for k in range(3))
        for t in range(m):
            out.append(LatticePoint(*(base[k] + t * step[k] for k in range(3))))
    return LatticeKnot(tuple(out))


class Isometry(NamedTuple):
    """Signed permutation of the axes: coordinate k of the image is
    signs[k] * p[perm[k]]."""

    perm: tuple[int, int, int]
    signs: tuple[int, int, int]

    def apply(self, p: LatticePoint) -> LatticePoint:
        return LatticePoint(*(self.signs[k] * p[self.perm[k]] for k in range(3)))


def lattice_isometries() -> tuple[Isometry, ...]:
    """All 48 signed axis permutations of the cubic lattice."""
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            out.append(Isometry(perm, signs))
    return tuple(out)


def transform(
    knot: LatticeKnot,
    iso: Optional[Isometry] = None,
    translate: TrueVertex = (0, 0, 0),
) -> LatticeKnot:
    """Apply a lattice isometry and an integer translation to a knot."""
    shift = tuple(2 * t for t in translate)
    vs = []
    for v in knot.vertices:
        w = iso.apply(v) if iso is not None else v
        vs.append(LatticePoint(*(w[k] + shift[k] for k in range(3))))
    return LatticeKnot(tuple(vs))
