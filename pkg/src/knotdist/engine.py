"""Vertex distortion engine.

The driver enumerates vertex pairs in bands of constant arc distance,
outer loop running from the antipodal band d = floor(n/2) down to 1 and
pairing index i with i - d (mod n).  Within a band the arc length is
fixed, so the band's best ratio is d over the band's minimum taxicab
distance, and the whole band can be evaluated with three vectorised
integer operations.  Early termination cuts the outer loop as soon as
no remaining band can reach the running maximum: distinct vertices are
at taxicab distance >= 1, so a band at arc distance d contributes at
most d.  The cut fires only for d strictly below the maximum, which
keeps the witness set identical to the unpruned run.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

import numpy as np

from .lattice import LatticeKnot, LatticePoint, scale

WitnessPair = tuple[LatticePoint, LatticePoint]

# Guard for the int64 fast path: keeps taxicab sums, squared Euclidean
# sums and the cross-multiplied heatmap comparisons inside 63 bits.
_NUMPY_COORD_CAP = 2**29


@dataclass(frozen=True)
class DistortionReport:
    """Exact distortion maximum with its complete witness set.

    delta is the maximum ratio, witnesses the deduplicated unordered
    point pairs achieving it (each pair tuple in coordinate order),
    pairs_examined the number of index pairs evaluated, and pruned
    whether early termination skipped any band.
    """

    delta: Fraction
    witnesses: frozenset[WitnessPair]
    pairs_examined: int
    pruned: bool


class HeatmapRow(NamedTuple):
    index: int
    vertex: LatticePoint
    value: Fraction


def _ordered_pair(a: LatticePoint, b: LatticePoint) -> WitnessPair:
    return (a, b) if a <= b else (b, a)


class _Sweep:
    """One banded scan over the vertex pairs of a knot."""

    def __init__(self, knot: LatticeKnot, threads: int = 1, want_heatmap: bool = False):
        if threads < 1:
            raise ValueError(f"threads must be >= 1, got {threads}")
        self.knot = knot
        self.n = knot.n
        self.want_heatmap = want_heatmap
        peak = max(max(abs(c) for c in v) for v in knot.vertices)
        self.use_numpy = peak <= _NUMPY_COORD_CAP and self.n * (6 * peak + 4) < 2**62
        self.threads = min(threads, self.n) if self.use_numpy else 1
        self.pool: Optional[ThreadPoolExecutor] = None
        if self.use_numpy:
            self.coords = np.array(knot.vertices, dtype=np.int64)
            if want_heatmap:
                self.row_num = np.zeros(self.n, dtype=np.int64)
                self.row_den = np.ones(self.n, dtype=np.int64)
        else:
            self.coords_py = [tuple(v) for v in knot.vertices]
            if want_heatmap:
                self.rows_py = [Fraction(0)] * self.n

    # -- band evaluation --------------------------------------------------

    def _band_numpy(self, d: int, square: bool) -> np.ndarray:
        """Per-index taxicab (or squared Euclidean) distance to index i - d."""
        v = self.coords
        if self.pool is None:
            diff = v - np.roll(v, d, axis=0)
        else:
            # partition the i-range; merge order is fixed by chunk index,
            # so the result is independent of scheduling
            bounds = [self.n * k // self.threads for k in range(self.threads + 1)]
            idx = np.arange(self.n)

            def piece(k: int) -> np.ndarray:
                lo, hi = bounds[k], bounds[k + 1]
                return v[lo:hi] - v[(idx[lo:hi] - d) % self.n]

            diff = np.concatenate(list(self.pool.map(piece, range(self.threads))))
        if square:
            return (diff * diff).sum(axis=1)
        return np.abs(diff).sum(axis=1)

    def _band_py(self, d: int, square: bool) -> list[int]:
        vs = self.coords_py
        n = self.n
        out = []
        for i in range(n):
            a = vs[i]
            b = vs[(i - d) % n]
            if square:
                out.append(
                    (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2
                )
            else:
                out.append(abs(a[0] - b[0]) + abs(a[1] - b[1]) + abs(a[2] - b[2]))
        return out

    def _band(self, d: int, square: bool = False):
        return (
            self._band_numpy(d, square) if self.use_numpy else self._band_py(d, square)
        )

    def _update_heatmap(self, d: int, dist) -> None:
        # pair (i, i-d) feeds row i directly and row i-d through the
        # shifted view, so every row sees both of its band-d partners
        if self.use_numpy:
            for cand in (dist, np.roll(dist, -d)):
                better = 2 * d * self.row_den > self.row_num * cand
                self.row_num[better] = 2 * d
                self.row_den[better] = cand[better]
        else:
            for i in range(self.n):
                r = Fraction(2 * d, dist[i])
                if r > self.rows_py[i]:
                    self.rows_py[i] = r
                j = (i - d) % self.n
                if r > self.rows_py[j]:
                    self.rows_py[j] = r

    # -- drivers ------------------------------------------------------------

    def run(self, prune: bool) -> tuple[Fraction, frozenset[WitnessPair], int, bool]:
        n = self.n
        delta = Fraction(1)
        index_pairs: set[tuple[int, int]] = set()
        bands = 0
        for d in range(n // 2, 0, -1):
            if prune and delta > d:
                break
            bands += 1
            dist = self._band(d)
            if self.want_heatmap:
                self._update_heatmap(d, dist)
            dmin = int(dist.min()) if self.use_numpy else min(dist)
            best = Fraction(2 * d, dmin)
            if best < delta:
                continue
            if best > delta:
                delta = best
                index_pairs.clear()
            if self.use_numpy:
                hits = np.nonzero(dist == dmin)[0]
            else:
                hits = [i for i in range(n) if dist[i] == dmin]
            for i in hits:
                i = int(i)
                j = (i - d) % n
                index_pairs.add((min(i, j), max(i, j)))
        witnesses = frozenset(
            _ordered_pair(self.knot.vertices[i], self.knot.vertices[j])
            for i, j in index_pairs
        )
        return delta, witnesses, bands * n, bands < n // 2

    def run_euclidean(self) -> Fraction:
        best = Fraction(0)
        for d in range(self.n // 2, 0, -1):
            dist = self._band(d, square=True)
            emin = int(dist.min()) if self.use_numpy else min(dist)
            cand = Fraction(4 * d * d, emin)
            if cand > best:
                best = cand
        return best

    def heatmap_rows(self) -> tuple[HeatmapRow, ...]:
        if self.use_numpy:
            values = [
                Fraction(int(a), int(b)) for a, b in zip(self.row_num, self.row_den)
            ]
        else:
            values = self.rows_py
        return tuple(
            HeatmapRow(i, v, values[i]) for i, v in enumerate(self.knot.vertices)
        )


def _with_pool(sweep: _Sweep, job: Callable):
    if sweep.threads > 1:
        with ThreadPoolExecutor(max_workers=sweep.threads) as pool:
            sweep.pool = pool
            try:
                return job()
            finally:
                sweep.pool = None
    return job()


def vertex_distortion(
    knot: LatticeKnot, *, prune: bool = True, threads: int = 1
) -> DistortionReport:
    """Maximum of arc/taxicab over all vertex pairs, with all witnesses.

    With prune=True the outer band loop stops once no remaining band can
    match the running maximum; the result (value and witness set) is
    identical to the unpruned run.
    """
    sweep = _Sweep(knot, threads=threads)
    delta, wit, pairs, cut = _with_pool(sweep, lambda: sweep.run(prune))
    return DistortionReport(delta, wit, pairs, prune and cut)


def vertex_distortion_with_heatmap(
    knot: LatticeKnot, *, threads: int = 1
) -> tuple[DistortionReport, tuple[HeatmapRow, ...]]:
    """Unpruned sweep that also collects the per-vertex row maxima."""
    sweep = _Sweep(knot, threads=threads, want_heatmap=True)
    delta, wit, pairs, _ = _with_pool(sweep, lambda: sweep.run(prune=False))
    return DistortionReport(delta, wit, pairs, False), sweep.heatmap_rows()


def heatmap(knot: LatticeKnot, *, threads: int = 1) -> tuple[HeatmapRow, ...]:
    """For each vertex, the maximum ratio against every other vertex."""
    return vertex_distortion_with_heatmap(knot, threads=threads)[1]


def _halve(p: LatticePoint) -> LatticePoint:
    return LatticePoint(p.x // 2, p.y // 2, p.z // 2)


def gromov1_distortion(
    knot: LatticeKnot, *, prune: bool = True, threads: int = 1
) -> DistortionReport:
    """Distortion maximum over the whole curve in the taxicab metric.

    Computed as the vertex distortion of the doubled knot, whose vertices
    are exactly the vertices and midpoints of the original; witnesses are
    mapped back to those points.
    """
    rep = vertex_distortion(scale(knot, 2), prune=prune, threads=threads)
    witnesses = frozenset(_ordered_pair(_halve(a), _halve(b)) for a, b in rep.witnesses)
    return DistortionReport(rep.delta, witnesses, rep.pairs_examined, rep.pruned)


def _taxicab_doubled(a: LatticePoint, b: LatticePoint) -> int:
    return abs(a.x - b.x) + abs(a.y - b.y) + abs(a.z - b.z)


def brute_force_vm_distortion(
    knot: LatticeKnot, *, vertices_only: bool = False
) -> DistortionReport:
    """Oracle: exhaustive ratio maximum over vertices and midpoints.

    Plain O(m^2) double loop with cross-multiplied integer comparisons,
    no bands, no pruning, no vectorisation; kept deliberately independent
    of the banded engine so the two can check each other.
    """
    pts: list[tuple[int, LatticePoint]] = sorted(
        (off, p)
        for p, off in knot.offset_table.items()
        if not (vertices_only and off % 2)
    )
    m = len(pts)
    circumference = 2 * knot.n
    best_num, best_den = 1, 1
    hits: list[tuple[LatticePoint, LatticePoint]] = []
    for i in range(m):
        off_a, a = pts[i]
        for j in range(i + 1, m):
            off_b, b = pts[j]
            arc = min(off_b - off_a, circumference - (off_b - off_a))
            d1 = _taxicab_doubled(a, b)
            lhs = arc * best_den
            rhs = best_num * d1
            if lhs > rhs:
                best_num, best_den = arc, d1
                hits = [(a, b)]
            elif lhs == rhs:
                hits.append((a, b))
    return DistortionReport(
        Fraction(best_num, best_den),
        frozenset(_ordered_pair(a, b) for a, b in hits),
        m * (m - 1) // 2,
        False,
    )


def euclidean_vertex_lower_bound(knot: LatticeKnot, *, threads: int = 1) -> Fraction:
    """Maximum squared arc/Euclidean ratio over distinct vertex pairs.

    A lower bound for the squared Gromov distortion of the curve; always
    at least the squared vertex distortion since Euclidean distance never
    exceeds taxicab distance.
    """
    sweep = _Sweep(knot, threads=threads)
    return _with_pool(sweep, sweep.run_euclidean)
