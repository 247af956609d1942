"""Conformation generators for the test and validation corpus.

Rectangles are exact; torus knots are built by densely sampling the
standard parametric curve, rounding onto the lattice and repairing any
touch points; random polygons come from a seeded backtracking search;
and small polygons can be enumerated exhaustively up to the 48 lattice
isometries, translation, cycle rotation and orientation reversal.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Optional

from .lattice import LatticeKnot, validate

# moves 0..5 are +x,-x,+y,-y,+z,-z
_STEPS = ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1))
_OPPOSITE = (1, 0, 3, 2, 5, 4)

DEFAULT_TORUS_SCALE = 3


class GeneratorError(RuntimeError):
    """A generator exhausted its retry budget without a valid knot."""


@dataclass(frozen=True)
class GeneratorSpec:
    """Declarative description of a corpus conformation.

    kind is one of rectangle, torus, random, exhaustive; only the fields
    of the chosen kind matter.  Identical specs produce identical knots.
    """

    kind: str
    m: int = 1
    n: int = 1
    p: int = 2
    q: int = 3
    scale: int = DEFAULT_TORUS_SCALE
    length: int = 4
    seed: int = 0
    n_max: int = 8

    def knots(self) -> Iterator[LatticeKnot]:
        if self.kind == "rectangle":
            yield rectangle(self.m, self.n)
        elif self.kind == "torus":
            yield torus_knot(self.p, self.q, self.scale)
        elif self.kind == "random":
            yield random_polygon(self.length, self.seed)
        elif self.kind == "exhaustive":
            yield from exhaustive_small(self.n_max)
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")


def rectangle(m: int, n: int) -> LatticeKnot:
    """Axis-aligned m-by-n rectangle in the z = 0 plane, corner at the
    origin: m rows tall (y), n columns wide (x), 2(m + n) edges."""
    if m < 1 or n < 1:
        raise ValueError(f"rectangle sides must be >= 1, got {m}x{n}")
    vs = [(i, 0, 0) for i in range(n)]
    vs += [(n, j, 0) for j in range(m)]
    vs += [(n - i, m, 0) for i in range(n)]
    vs += [(0, m - j, 0) for j in range(m)]
    return LatticeKnot.from_true(vs)


# -- torus knots ----------------------------------------------------------


def _sample_torus(p: int, q: int, s: int) -> list[tuple[int, int, int]]:
    """Round a dense sampling of the (p, q) torus curve to lattice points."""
    big_r, small_r = 2.0, 1.0
    curve_len = 2 * math.pi * math.hypot(p * big_r, q * small_r) * s
    samples = max(int(curve_len) * 64, 256)
    pts: list[tuple[int, int, int]] = []
    for k in range(samples):
        t = 2 * math.pi * k / samples
        w = (big_r + small_r * math.cos(q * t)) * s
        point = (
            round(w * math.cos(p * t)),
            round(w * math.sin(p * t)),
            round(small_r * s * math.sin(q * t)),
        )
        if not pts or point != pts[-1]:
            pts.append(point)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    return pts


def _connect(pts: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    """Join consecutive rounded points by unit steps, axis by axis."""
    walk = [pts[0]]
    for target in pts[1:] + [pts[0]]:
        cur = walk[-1]
        for axis in range(3):
            step = 1 if target[axis] > cur[axis] else -1
            while cur[axis] != target[axis]:
                nxt = list(cur)
                nxt[axis] += step
                cur = tuple(nxt)
                walk.append(cur)
    walk.pop()  # closing vertex duplicates the start
    return walk


def _drop_backtracks(walk: list[tuple[int, int, int]]) -> list[tuple[int, int, int]]:
    """Collapse a -> b -> a stutters anywhere on the cycle, seam included."""
    spike = True
    while spike and len(walk) >= 3:
        spike = False
        m = len(walk)
        for i in range(m):
            if walk[(i - 1) % m] == walk[(i + 1) % m]:
                kill = {i, (i + 1) % m}
                walk = [v for j, v in enumerate(walk) if j not in kill]
                spike = True
                break
    return walk


def _repair_touches(
    walk: list[tuple[int, int, int]], max_passes: int = 16
) -> Optional[list[tuple[int, int, int]]]:
    """Detour repeated vertices by pushing the later visit one unit aside.

    A touch point v with neighbors a, b is replaced by the three fresh
    vertices a+u, v+u, b+u for a unit direction u perpendicular to both
    incident steps; unit lattice squares have no lattice points in their
    interior, so the detour never crosses the rest of the walk.
    """
    for _ in range(max_passes):
        seen: dict[tuple[int, int, int], int] = {}
        dup_at = -1
        for i, v in enumerate(walk):
            if v in seen:
                dup_at = i
                break
            seen[v] = i
        if dup_at < 0:
            return walk
        n = len(walk)
        v = walk[dup_at]
        a = walk[(dup_at - 1) % n]
        b = walk[(dup_at + 1) % n]
        occupied = set(walk)
        done = False
        for u in _STEPS:
            if any(u[k] and (a[k] != v[k] or b[k] != v[k]) for k in range(3)):
                continue  # u must be perpendicular to both steps
            detour = [tuple(pt[k] + u[k] for k in range(3)) for pt in (a, v, b)]
            if any(d in occupied for d in detour):
                continue
            # ...a, v, b... becomes ...a, a+u, v+u, b+u, b...
            walk = walk[:dup_at] + detour + walk[dup_at + 1 :]
            done = True
            break
        if not done:
            return None
    return None


def torus_knot(p: int, q: int, scale: int = DEFAULT_TORUS_SCALE, *, max_retries: int = 4) -> LatticeKnot:
    """Lattice conformation of the (p, q) torus knot.

    Built by sample-round-repair at the given sampling scale; if the
    rounded path cannot be made self-avoiding the scale is bumped, up to
    max_retries times.  The knot type is as faithful as the sampling:
    it is not verified independently.
    """
    if math.gcd(p, q) != 1:
        raise ValueError(f"torus knot parameters must be coprime, got ({p}, {q})")
    if min(p, q) < 2:
        raise ValueError(f"torus knot parameters must both be >= 2, got ({p}, {q})")
    if scale < 2:
        raise ValueError(f"sampling scale must be >= 2, got {scale}")
    tried = []
    for s in range(scale, scale + max_retries):
        tried.append(s)
        walk = _drop_backtracks(_connect(_sample_torus(p, q, s)))
        repaired = _repair_touches(walk)
        if repaired is None:
            continue
        if validate(repaired):
            return LatticeKnot.from_true(repaired)
    raise GeneratorError(
        f"could not realise torus knot ({p}, {q}) on the lattice; tried scales {tried}"
    )


# -- random polygons -------------------------------------------------------


def random_polygon(length: int, seed: int, *, max_attempts: int = 8) -> LatticeKnot:
    """Seeded closed self-avoiding polygon with exactly `length` edges.

    Backtracking search over unit moves, pruned by taxicab reachability
    and parity.  The PRNG is Python's Mersenne Twister seeded with a
    string derived from (seed, attempt), so identical arguments yield
    identical polygons everywhere.
    """
    if length < 4 or length % 2:
        raise ValueError(f"polygon length must be even and >= 4, got {length}")
    for attempt in range(max_attempts):
        rng = random.Random(f"knotdist.random_polygon:{seed}:{attempt}")
        walk = _random_walk(length, rng, node_budget=500_000)
        if walk is not None:
            return LatticeKnot.from_true(walk)
    raise GeneratorError(
        f"no closed self-avoiding polygon of length {length} found for seed {seed}"
    )


def _random_walk(
    length: int, rng: random.Random, node_budget: int
) -> Optional[list[tuple[int, int, int]]]:
    origin = (0, 0, 0)
    path = [origin]
    visited = {origin}
    frames: list[list[int]] = [rng.sample(range(6), 6)]
    nodes = 0
    while frames:
        if not frames[-1]:
            frames.pop()
            if len(path) > 1:
                visited.discard(path.pop())
            continue
        move = frames[-1].pop()
        cur = path[-1]
        step = _STEPS[move]
        nxt = (cur[0] + step[0], cur[1] + step[1], cur[2] + step[2])
        moves_left = length - (len(path) - 1)
        if nxt == origin:
            if moves_left == 1:
                return path
            continue
        if nxt in visited:
            continue
        dist = abs(nxt[0]) + abs(nxt[1]) + abs(nxt[2])
        if dist > moves_left - 1 or (moves_left - 1 - dist) % 2:
            continue
        nodes += 1
        if nodes > node_budget:
            return None
        path.append(nxt)
        visited.add(nxt)
        frames.append(rng.sample(range(6), 6))
    return None


# -- exhaustive enumeration --------------------------------------------------


def _move_relabelings() -> tuple[tuple[int, ...], ...]:
    """The 48 signed axis permutations as relabelings of the six moves."""
    tables = []
    for perm in permutations(range(3)):
        for flips in range(8):
            table = [0] * 6
            for mv in range(6):
                axis, neg = divmod(mv, 2)
                table[mv] = 2 * perm[axis] + (neg ^ ((flips >> axis) & 1))
            tables.append(tuple(table))
    return tuple(tables)


_RELABELINGS = _move_relabelings()


def canonical_moves(moves: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least move sequence over all 48 relabelings,
    cycle rotations and both orientations; a translation-free canonical
    form for closed walks."""
    n = len(moves)
    reverse = tuple(_OPPOSITE[m] for m in reversed(moves))
    best: Optional[tuple[int, ...]] = None
    for table in _RELABELINGS:
        for seq in (moves, reverse):
            relabeled = tuple(table[m] for m in seq)
            for r in range(n):
                cand = relabeled[r:] + relabeled[:r]
                if best is None or cand < best:
                    best = cand
    return best


def _walk_of_moves(moves: tuple[int, ...]) -> list[tuple[int, int, int]]:
    pos = (0, 0, 0)
    out = [pos]
    for m in moves[:-1]:
        s = _STEPS[m]
        pos = (pos[0] + s[0], pos[1] + s[1], pos[2] + s[2])
        out.append(pos)
    return out


def _enumerate_classes(n: int) -> list[tuple[int, ...]]:
    """Canonical move strings of all length-n polygons up to isometry.

    The search fixes the first move to +x, the first move off the x axis
    to +y and the first z move to +z; every isometry class has such a
    representative, and canonical-form deduplication removes the rest.
    """
    origin = (0, 0, 0)
    found: set[tuple[int, ...]] = set()
    moves: list[int] = []
    visited = {origin}

    def rec(pos: tuple[int, int, int], used_y: bool, used_z: bool) -> None:
        remaining = n - len(moves)
        if remaining == 0:
            if pos == origin:
                found.add(canonical_moves(tuple(moves)))
            return
        dist = abs(pos[0]) + abs(pos[1]) + abs(pos[2])
        if dist > remaining or (remaining - dist) % 2:
            return
        for mv in range(6):
            if not moves and mv != 0:
                continue
            if mv >= 2 and not used_y and mv != 2:
                continue
            if mv >= 4 and not used_z and mv != 4:
                continue
            s = _STEPS[mv]
            nxt = (pos[0] + s[0], pos[1] + s[1], pos[2] + s[2])
            if nxt == origin:
                if remaining == 1:
                    moves.append(mv)
                    rec(nxt, used_y, used_z)
                    moves.pop()
                continue
            if nxt in visited:
                continue
            visited.add(nxt)
            moves.append(mv)
            rec(nxt, used_y or mv >= 2, used_z or mv >= 4)
            moves.pop()
            visited.discard(nxt)

    rec(origin, False, False)
    return sorted(found)


def exhaustive_small(n_max: int) -> Iterator[LatticeKnot]:
    """All polygons with at most n_max edges, one per isometry class.

    Deterministic order: by edge count, then by canonical move string.
    Feasible up to n_max around 12.
    """
    if n_max < 4:
        raise ValueError(f"n_max must be >= 4, got {n_max}")
    for n in range(4, n_max + 1, 2):
        for moves in _enumerate_classes(n):
            yield LatticeKnot.from_true(_walk_of_moves(moves))
