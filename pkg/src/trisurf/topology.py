r"""
Closed walks and their integer homology.

A walk is a dart sequence whose endpoints chain up; a cycle is a closed
walk and may repeat darts.  Homology of a closed walk is computed in
the chord basis of a spanning tree: each dart gets a signed chord
indicator, face boundaries span the relations, and a one-time Smith
reduction of the face-relation lattice turns signed chord counts into
coordinates in Z^(2g).  The zero vector characterizes separating
(null-homologous) cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .map_core import (CombMap, InvalidMapError, _euler_data_unchecked, faces,
                       vertex_table)


@dataclass(frozen=True)
class ClosedWalk:
    darts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)

    def rotate(self, k: int) -> "ClosedWalk":
        d = self.darts
        k %= len(d)
        return ClosedWalk(d[k:] + d[:k])

    def reverse(self, m: CombMap) -> "ClosedWalk":
        return ClosedWalk(tuple(m.alpha_of(d) for d in reversed(self.darts)))

    def min_rotation(self) -> "ClosedWalk":
        d = self.darts
        best = min(range(len(d)), key=lambda k: d[k:] + d[:k])
        return self.rotate(best)


def as_walk(w) -> ClosedWalk:
    if isinstance(w, ClosedWalk):
        return w
    return ClosedWalk(tuple(w))


class WalkError(ValueError):
    """A dart sequence that is not a walk on the given map."""


def check_closed_walk(m: CombMap, w) -> ClosedWalk:
    w = as_walk(w)
    if not w.darts:
        raise WalkError("empty walk")
    n = m.n_darts
    for d in w.darts:
        if not 1 <= d <= n:
            raise WalkError(f"dart {d} not on the map")
    vt = vertex_table(m)
    for i, d in enumerate(w.darts):
        nxt = w.darts[(i + 1) % len(w.darts)]
        if vt[m.alpha_of(d) - 1] != vt[nxt - 1]:
            raise WalkError(f"endpoint of dart {d} is not the start of {nxt}")
    return w


def walk_vertices(m: CombMap, darts: Sequence[int]) -> list[int]:
    """v_0 .. v_(l-1): start vertices along the walk (v_0 = start of dart 1)."""
    vt = vertex_table(m)
    return [vt[d - 1] for d in darts]


def is_simple_cycle(m: CombMap, w) -> bool:
    w = as_walk(w)
    verts = walk_vertices(m, w.darts)
    return len(set(verts)) == len(verts)


def is_simple_path(m: CombMap, darts: Sequence[int]) -> bool:
    """Path simplicity: all of v_0..v_l distinct."""
    if not darts:
        return True
    vt = vertex_table(m)
    verts = [vt[darts[0] - 1]] + [vt[m.alpha_of(d) - 1] for d in darts]
    return len(set(verts)) == len(verts)


def is_spur_free(m: CombMap, w) -> bool:
    w = as_walk(w)
    d = w.darts
    return all(d[(i + 1) % len(d)] != m.alpha_of(d[i]) for i in range(len(d)))


# -- set-length order ---------------------------------------------------------


def set_length(w) -> tuple[int, ...]:
    """Running count of distinct darts along the walk."""
    w = as_walk(w)
    seen: set[int] = set()
    out = []
    for d in w.darts:
        seen.add(d)
        out.append(len(seen))
    return tuple(out)


LESS = "less"
GREATER = "greater"
EQUAL_SL = "equal-sl"


def compare_sl(w1, w2) -> str:
    """Lexicographic set-length comparison of equal-length walks.

    Returns "greater" iff w1 has the larger set-length at the first
    differing index; equal vectors are incomparable and reported as
    "equal-sl".
    """
    a, b = set_length(w1), set_length(w2)
    if len(a) != len(b):
        raise ValueError(f"walks have different lengths {len(a)} != {len(b)}")
    for x, y in zip(a, b):
        if x != y:
            return GREATER if x > y else LESS
    return EQUAL_SL


# -- reduced form -------------------------------------------------------------


@dataclass(frozen=True)
class ReducedForm:
    """Decomposition (rotation of) C = p . gamma^k . tail."""

    rotation: int
    prefix: tuple[int, ...]
    gamma: tuple[int, ...]
    k: int
    tail: tuple[int, ...]

    def reassemble(self) -> tuple[int, ...]:
        return self.prefix + self.gamma * self.k + self.tail


def reduced_form(m: CombMap, w) -> ReducedForm:
    """Write the cycle, after rotation, as p . gamma^k . P' with gamma a
    simple cycle, k maximal laps, and P' empty or starting off gamma.

    Rotation rule: pure powers of a simple cycle keep their basepoint;
    otherwise rotate to the repeated vertex with the smallest second
    occurrence.
    """
    w = check_closed_walk(m, w)
    darts = w.darts
    ell = len(darts)

    # power of a simple cycle
    for per in range(1, ell + 1):
        if ell % per:
            continue
        if all(darts[i] == darts[i % per] for i in range(ell)):
            gamma = darts[:per]
            if is_simple_cycle(m, gamma):
                return ReducedForm(0, (), gamma, ell // per, ())
            break

    verts = walk_vertices(m, darts)
    first_seen: dict[int, int] = {}
    a = b = -1
    for i, v in enumerate(verts):
        if v in first_seen:
            a, b = first_seen[v], i
            break
        first_seen[v] = i
    if a < 0:
        raise AssertionError("non-power cycle with all vertices distinct")

    rot = tuple(darts[a:] + darts[:a])
    blen = b - a
    tilde = set(rot[:blen])
    c = None
    for j in range(blen, ell):
        if rot[j] not in tilde:
            c = j + 1  # 1-indexed position of the first dart off gamma~
            break
    if c is None:
        raise AssertionError("cycle leaves no lap yet uses only lap darts")
    t = (c - 1) % blen
    prefix = rot[:t]
    gamma = rot[t:blen] + rot[:t]
    k = (c - 1 - t) // blen
    tail = rot[c - 1:]
    form = ReducedForm(a, prefix, gamma, k, tail)
    assert form.reassemble() == rot
    return form


# -- integer homology ---------------------------------------------------------


def _smith_right_transform(rows: list[list[int]], m: int) -> tuple[list[int], list[list[int]]]:
    """Smith form of the row lattice: returns (diag, V) with V unimodular
    such that rowlattice(A) V = rowlattice(diag)."""
    A = [row[:] for row in rows]
    f = len(A)
    V = [[int(i == j) for j in range(m)] for i in range(m)]
    t = 0
    rank_bound = min(f, m)
    while t < rank_bound:
        # pivot: nonzero of least magnitude in the remaining block
        piv = None
        for i in range(t, f):
            for j in range(t, m):
                x = A[i][j]
                if x and (piv is None or abs(x) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            for row in V:
                row[t], row[pj] = row[pj], row[t]
        p = A[t][t]
        dirty = False
        for i in range(t + 1, f):
            q = A[i][t] // p
            if q:
                for j in range(t, m):
                    A[i][j] -= q * A[t][j]
            if A[i][t]:
                dirty = True
        for j in range(t + 1, m):
            q = A[t][j] // p
            if q:
                for i in range(f):
                    A[i][j] -= q * A[i][t]
                for i in range(m):
                    V[i][j] -= q * V[i][t]
            if A[t][j]:
                dirty = True
        if dirty:
            continue
        # pivot must divide the rest of the block
        fixed = True
        for i in range(t + 1, f):
            for j in range(t + 1, m):
                if A[i][j] % p:
                    for jj in range(t, m):
                        A[t][jj] += A[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    diag = []
    for i in range(rank_bound):
        x = A[i][i] if i < f else 0
        if x == 0:
            break
        diag.append(abs(x))
    return diag, V


class Surface:
    """One-time topological preprocessing of a valid triangulation."""

    def __init__(self, m: CombMap):
        self.map = m
        self.vertex_of = vertex_table(m)
        ed = _euler_data_unchecked(m)
        self.genus = ed.genus
        self.n_vertices = ed.vertices
        self.faces = faces(m)

        n = m.n_darts
        self.dart_start = self.vertex_of
        self.dart_end = [self.vertex_of[m.alpha_of(d) - 1] for d in range(1, n + 1)]
        # edges: representative dart = min of the pair
        self.edge_rep = [min(d, m.alpha_of(d)) for d in range(1, n + 1)]
        reps = sorted({r for r in self.edge_rep})
        self.edge_index = {r: i for i, r in enumerate(reps)}
        self.n_edges = len(reps)

        # out-darts per vertex in dart order (not the rotation order)
        rotations: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for d in range(1, n + 1):
            rotations[self.vertex_of[d - 1]].append(d)
        self.out_darts = rotations
        in_tree = [False] * self.n_edges
        seen = [False] * self.n_vertices
        root_v = self.vertex_of[m.root - 1]
        seen[root_v] = True
        queue = [root_v]
        while queue:
            v = queue.pop(0)
            for d in rotations[v]:
                u = self.vertex_of[m.alpha_of(d) - 1]
                if not seen[u]:
                    seen[u] = True
                    in_tree[self.edge_index[self.edge_rep[d - 1]]] = True
                    queue.append(u)
        if not all(seen):
            raise InvalidMapError("map is not connected")
        self.in_tree = in_tree

        chord_ids = [i for i in range(self.n_edges) if not in_tree[i]]
        self.chord_pos = {e: j for j, e in enumerate(chord_ids)}
        self.n_chords = len(chord_ids)

        # dart -> (chord position, sign); tree darts have no chord
        self.dart_chord: list[tuple[int, int] | None] = [None] * n
        for d in range(1, n + 1):
            rep = self.edge_rep[d - 1]
            ei = self.edge_index[rep]
            if not in_tree[ei]:
                self.dart_chord[d - 1] = (self.chord_pos[ei], 1 if d == rep else -1)

        rows = []
        for cyc in self.faces:
            row = [0] * self.n_chords
            for d in cyc:
                dc = self.dart_chord[d - 1]
                if dc is not None:
                    row[dc[0]] += dc[1]
            rows.append(row)
        diag, V = _smith_right_transform(rows, self.n_chords)
        if any(x != 1 for x in diag):
            raise AssertionError(f"face lattice has torsion diag={diag}")
        rank = len(diag)
        if self.n_chords - rank != 2 * self.genus:
            raise AssertionError("homology rank disagrees with genus")
        kept = list(range(rank, self.n_chords))
        # per-dart homology weight in Z^(2g)
        self.dart_hvec: list[tuple[int, ...]] = []
        zero = (0,) * (2 * self.genus)
        for d in range(1, n + 1):
            dc = self.dart_chord[d - 1]
            if dc is None:
                self.dart_hvec.append(zero)
            else:
                j, s = dc
                self.dart_hvec.append(tuple(s * V[j][i] for i in kept))

    def walk_class(self, darts: Sequence[int]) -> tuple[int, ...]:
        acc = [0] * (2 * self.genus)
        for d in darts:
            hv = self.dart_hvec[d - 1]
            for i, x in enumerate(hv):
                acc[i] += x
        return tuple(acc)


@lru_cache(maxsize=4096)
def surface(m: CombMap) -> Surface:
    return Surface(m)


def homology_class(m: CombMap, w) -> tuple[int, ...]:
    """Image of the closed walk in H1 = Z^(2g), in the map's fixed basis."""
    w = check_closed_walk(m, w)
    return surface(m).walk_class(w.darts)


def is_null_homologous(m: CombMap, w) -> bool:
    return all(x == 0 for x in homology_class(m, w))
