r"""
Brute-force ground truth by exhaustive gluing of labeled triangles.

The face permutation is pinned to the canonical product of 3-cycles
(darts ``3t+1, 3t+2, 3t+3`` form triangle ``t``) and every fixed-point-
free involution ``alpha`` on the darts is visited.  Counting connected
gluings by genus and dividing by the stabilizer order (2n)! 3^(2n) / 6n
yields the rooted counts, an independent check of the recurrence.

The hot scans are numba-compiled; pure-Python twins of the same logic
cover small sizes and serve as a cross-check (and fallback when numba
is unavailable).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .map_core import CombMap

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap(args[0]) if args and callable(args[0]) else wrap


MAX_CENSUS_N = 3
MAX_BOUNDARY_DARTS = 18


class OracleScaleError(ValueError):
    """The requested exhaustive enumeration is beyond desk scale."""


def double_factorial_odd(m: int) -> int:
    """(m)!! for odd m >= -1; the number of perfect matchings on m+1 points."""
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def triangle_sigma(n_darts: int) -> tuple[int, ...]:
    """Image array of (1 2 3)(4 5 6)... on 1..n_darts."""
    sigma = []
    for d in range(1, n_darts + 1):
        sigma.append(d - 2 if d % 3 == 0 else d + 1)
    return tuple(sigma)


@dataclass(frozen=True)
class GluingCensus:
    n: int
    counts_by_genus: dict[int, int]
    disconnected: int

    @property
    def total(self) -> int:
        return sum(self.counts_by_genus.values()) + self.disconnected

    def stabilizer_order(self) -> int:
        return math.factorial(2 * self.n) * 3 ** (2 * self.n)

    def rooted_count(self, g: int) -> int:
        """tau(n,g) derived from the labeled count: 6n N / ((2n)! 3^(2n))."""
        N = self.counts_by_genus.get(g, 0)
        num = 6 * self.n * N
        den = self.stabilizer_order()
        q, r = divmod(num, den)
        if r:
            raise ArithmeticError(
                f"6n*N_(n={self.n},g={g}) = {num} not divisible by {den}")
        return q

    def rooted_counts(self) -> dict[int, int]:
        return {g: self.rooted_count(g) for g in sorted(self.counts_by_genus)}


# -- plain census -------------------------------------------------------------


@njit(cache=True)
def _census_kernel(n_darts, sigma0):  # pragma: no cover - numba-compiled
    half = n_darts // 2
    ntri = n_darts // 3
    alpha = np.full(n_darts, -1, np.int64)
    a_st = np.zeros(half, np.int64)
    b_st = np.zeros(half, np.int64)
    seen = np.zeros(n_darts, np.uint8)
    tri_seen = np.zeros(ntri, np.uint8)
    tri_stack = np.zeros(ntri, np.int64)
    counts = np.zeros(half + 2, np.int64)
    disconnected = 0

    depth = 0
    a_st[0] = 0
    b_st[0] = 0
    while depth >= 0:
        a = a_st[depth]
        if alpha[a] != -1:
            alpha[alpha[a]] = -1
            alpha[a] = -1
        b = b_st[depth]
        if b == 0:
            b = a
        b += 1
        while b < n_darts and alpha[b] != -1:
            b += 1
        if b >= n_darts:
            b_st[depth] = 0
            depth -= 1
            continue
        b_st[depth] = b
        alpha[a] = b
        alpha[b] = a
        if depth + 1 == half:
            for i in range(n_darts):
                seen[i] = 0
            V = 0
            for s in range(n_darts):
                if seen[s] == 0:
                    V += 1
                    d = s
                    while seen[d] == 0:
                        seen[d] = 1
                        d = sigma0[alpha[d]]
            for i in range(ntri):
                tri_seen[i] = 0
            tri_seen[0] = 1
            tri_stack[0] = 0
            sp = 1
            reached = 1
            while sp > 0:
                sp -= 1
                t = tri_stack[sp]
                for j in range(3):
                    u = alpha[3 * t + j] // 3
                    if tri_seen[u] == 0:
                        tri_seen[u] = 1
                        reached += 1
                        tri_stack[sp] = u
                        sp += 1
            if reached == ntri:
                chi = V - half + ntri
                counts[(2 - chi) // 2] += 1
            else:
                disconnected += 1
        else:
            nxt = 0
            while alpha[nxt] != -1:
                nxt += 1
            depth += 1
            a_st[depth] = nxt
            b_st[depth] = 0
    return counts, disconnected


def _iter_matchings(n_darts: int) -> Iterator[list[int]]:
    """All fixed-point-free involutions on 0..n_darts-1 (image lists)."""
    alpha = [-1] * n_darts

    def rec(a: int) -> Iterator[list[int]]:
        while a < n_darts and alpha[a] != -1:
            a += 1
        if a == n_darts:
            yield alpha
            return
        for b in range(a + 1, n_darts):
            if alpha[b] == -1:
                alpha[a] = b
                alpha[b] = a
                yield from rec(a + 1)
                alpha[a] = -1
                alpha[b] = -1

    yield from rec(0)


def _genus_and_connected(alpha: Sequence[int], sigma0: Sequence[int],
                         n_faces: int, face_of: Sequence[int]) -> tuple[int, bool]:
    """(genus, connected) of a 0-indexed gluing; genus valid only if connected."""
    n_darts = len(alpha)
    seen = [False] * n_darts
    V = 0
    for s in range(n_darts):
        if not seen[s]:
            V += 1
            d = s
            while not seen[d]:
                seen[d] = True
                d = sigma0[alpha[d]]
    fseen = [False] * n_faces
    fseen[0] = True
    stack = [0]
    reached = 1
    while stack:
        f = stack.pop()
        for d in range(n_darts):
            if face_of[d] == f:
                u = face_of[alpha[d]]
                if not fseen[u]:
                    fseen[u] = True
                    reached += 1
                    stack.append(u)
    chi = V - n_darts // 2 + n_faces
    return (2 - chi) // 2, reached == n_faces


def _census_python(n: int) -> GluingCensus:
    n_darts = 6 * n
    sigma0 = [d + 1 if (d + 1) % 3 else d - 2 for d in range(n_darts)]
    face_of = [d // 3 for d in range(n_darts)]
    counts: dict[int, int] = {}
    disconnected = 0
    for alpha in _iter_matchings(n_darts):
        g, conn = _genus_and_connected(alpha, sigma0, 2 * n, face_of)
        if conn:
            counts[g] = counts.get(g, 0) + 1
        else:
            disconnected += 1
    return GluingCensus(n, counts, disconnected)


def census(n: int, force_python: bool = False) -> GluingCensus:
    """Exact counts of all gluings of 2n labeled triangles, by genus.

    Refuses n outside 1..3: at n = 4 the scan would visit 23!! ~ 3e11
    matchings.
    """
    if not 1 <= n <= MAX_CENSUS_N:
        raise OracleScaleError(
            f"census supports 1 <= n <= {MAX_CENSUS_N}, got n={n} "
            f"({6 * n - 1}!! = {double_factorial_odd(6 * n - 1)} matchings)")
    if force_python or not _HAVE_NUMBA:
        return _census_python(n)
    sigma0 = np.array([d + 1 if (d + 1) % 3 else d - 2 for d in range(6 * n)],
                      dtype=np.int64)
    counts_arr, disconnected = _census_kernel(6 * n, sigma0)
    counts = {g: int(c) for g, c in enumerate(counts_arr) if c}
    return GluingCensus(n, counts, int(disconnected))


# -- exhaustive rooted streams -------------------------------------------------


def _canonical_alphas(n: int) -> Iterator[tuple[int, ...]]:
    """Connected gluings, one canonical representative per rooted map.

    Invariant: triangles are first used in increasing order and every
    fresh triangle is entered at its first dart, which picks exactly one
    alpha from each orbit of the stabilizer of dart 1.
    """
    n_darts = 6 * n
    ntri = 2 * n
    alpha = [0] * (n_darts + 1)

    def rec(used: int) -> Iterator[tuple[int, ...]]:
        a = 0
        for d in range(1, 3 * used + 1):
            if alpha[d] == 0:
                a = d
                break
        if a == 0:
            if used == ntri:
                yield tuple(alpha[1:])
            return
        for b in range(a + 1, 3 * used + 1):
            if alpha[b] == 0:
                alpha[a] = b
                alpha[b] = a
                yield from rec(used)
                alpha[a] = 0
                alpha[b] = 0
        if used < ntri:
            b = 3 * used + 1
            alpha[a] = b
            alpha[b] = a
            yield from rec(used + 1)
            alpha[a] = 0
            alpha[b] = 0

    yield from rec(1)


def enumerate_rooted(n: int, g: int) -> Iterator[CombMap]:
    """Every rooted triangulation of genus g with 2n faces, exactly once.

    Maps come out rooted at dart 1 with the canonical triangle sigma;
    the stream length equals tau(n, g).
    """
    if not 1 <= n <= MAX_CENSUS_N:
        raise OracleScaleError(
            f"enumerate_rooted supports 1 <= n <= {MAX_CENSUS_N}, got n={n}")
    sigma = triangle_sigma(6 * n)
    sigma0 = [s - 1 for s in sigma]
    face_of = [d // 3 for d in range(6 * n)]
    for alpha in _canonical_alphas(n):
        alpha0 = [x - 1 for x in alpha]
        genus, conn = _genus_and_connected(alpha0, sigma0, 2 * n, face_of)
        assert conn
        if genus == g:
            yield CombMap(sigma, alpha, 1)


def all_rooted(n: int) -> Iterator[CombMap]:
    """Every rooted triangulation with 2n faces, all genera."""
    if not 1 <= n <= MAX_CENSUS_N:
        raise OracleScaleError(f"all_rooted supports 1 <= n <= {MAX_CENSUS_N}")
    sigma = triangle_sigma(6 * n)
    for alpha in _canonical_alphas(n):
        yield CombMap(sigma, alpha, 1)


# -- boundary census -----------------------------------------------------------


def _boundary_sigma(profile: Sequence[int], m: int) -> tuple[list[int], list[int], list[int]]:
    """(sigma0, face_of, face_offsets) with boundary faces first, 0-indexed."""
    sizes = list(profile) + [3] * m
    sigma0: list[int] = []
    face_of: list[int] = []
    offsets = [0]
    pos = 0
    for fi, size in enumerate(sizes):
        for j in range(size):
            sigma0.append(pos if j == size - 1 else pos + j + 1)
        # fix up: sigma cycles within [pos, pos+size)
        for j in range(size):
            sigma0[pos + j] = pos + (j + 1) % size
        face_of.extend([fi] * size)
        pos += size
        offsets.append(pos)
    return sigma0, face_of, offsets


@njit(cache=True)
def _boundary_kernel(n_darts, sigma0, face_of, offsets, n_boundaries, n_faces,
                     target_genus):  # pragma: no cover - numba-compiled
    half = n_darts // 2
    alpha = np.full(n_darts, -1, np.int64)
    a_st = np.zeros(half, np.int64)
    b_st = np.zeros(half, np.int64)
    vid = np.full(n_darts, -1, np.int64)
    owner = np.full(n_darts, -1, np.int64)
    f_seen = np.zeros(n_faces, np.uint8)
    f_stack = np.zeros(n_faces, np.int64)
    count = 0

    depth = 0
    a_st[0] = 0
    b_st[0] = 0
    while depth >= 0:
        a = a_st[depth]
        if alpha[a] != -1:
            alpha[alpha[a]] = -1
            alpha[a] = -1
        b = b_st[depth]
        if b == 0:
            b = a
        b += 1
        while b < n_darts and alpha[b] != -1:
            b += 1
        if b >= n_darts:
            b_st[depth] = 0
            depth -= 1
            continue
        b_st[depth] = b
        alpha[a] = b
        alpha[b] = a
        if depth + 1 == half:
            for i in range(n_darts):
                vid[i] = -1
            V = 0
            for s in range(n_darts):
                if vid[s] == -1:
                    d = s
                    while vid[d] == -1:
                        vid[d] = V
                        d = sigma0[alpha[d]]
                    V += 1
            ok = True
            for i in range(V):
                owner[i] = -1
            for bi in range(n_boundaries):
                if not ok:
                    break
                for d in range(offsets[bi], offsets[bi + 1]):
                    u = vid[d]
                    if owner[u] != -1:
                        ok = False
                        break
                    owner[u] = bi
            if ok:
                for i in range(n_faces):
                    f_seen[i] = 0
                f_seen[0] = 1
                f_stack[0] = 0
                sp = 1
                reached = 1
                while sp > 0:
                    sp -= 1
                    f = f_stack[sp]
                    for d in range(offsets[f], offsets[f + 1]):
                        u = face_of[alpha[d]]
                        if f_seen[u] == 0:
                            f_seen[u] = 1
                            reached += 1
                            f_stack[sp] = u
                            sp += 1
                if reached == n_faces:
                    chi = V - half + n_faces
                    if (2 - chi) // 2 == target_genus:
                        count += 1
        else:
            nxt = 0
            while alpha[nxt] != -1:
                nxt += 1
            depth += 1
            a_st[depth] = nxt
            b_st[depth] = 0
    return count


def _boundary_census_python(n_darts, sigma0, face_of, offsets, n_boundaries,
                            n_faces, target_genus) -> int:
    count = 0
    for alpha in _iter_matchings(n_darts):
        vid = [-1] * n_darts
        V = 0
        for s in range(n_darts):
            if vid[s] == -1:
                d = s
                while vid[d] == -1:
                    vid[d] = V
                    d = sigma0[alpha[d]]
                V += 1
        ok = True
        owner: dict[int, int] = {}
        for bi in range(n_boundaries):
            for d in range(offsets[bi], offsets[bi + 1]):
                u = vid[d]
                if u in owner:
                    ok = False
                    break
                owner[u] = bi
            if not ok:
                break
        if not ok:
            continue
        fseen = [False] * n_faces
        fseen[0] = True
        stack = [0]
        reached = 1
        while stack:
            f = stack.pop()
            for d in range(offsets[f], offsets[f + 1]):
                u = face_of[alpha[d]]
                if not fseen[u]:
                    fseen[u] = True
                    reached += 1
                    stack.append(u)
        if reached != n_faces:
            continue
        chi = V - n_darts // 2 + n_faces
        if (2 - chi) // 2 == target_genus:
            count += 1
    return count


def boundary_configurations(m: int, g: int, profile: Sequence[int],
                            force_python: bool = False) -> int:
    """Raw count of valid labeled gluings for the boundary census."""
    profile = tuple(profile)
    if any(p < 1 for p in profile):
        raise ValueError("boundary sizes must be >= 1")
    n_darts = 3 * m + sum(profile)
    if n_darts > MAX_BOUNDARY_DARTS:
        raise OracleScaleError(
            f"boundary census needs {n_darts} darts > {MAX_BOUNDARY_DARTS}; refusing")
    if n_darts % 2:
        return 0
    if g < 0:
        return 0
    sigma0, face_of, offsets = _boundary_sigma(profile, m)
    n_faces = len(profile) + m
    if force_python or not _HAVE_NUMBA:
        return _boundary_census_python(n_darts, sigma0, face_of, offsets,
                                       len(profile), n_faces, g)
    return int(_boundary_kernel(
        n_darts,
        np.array(sigma0, dtype=np.int64),
        np.array(face_of, dtype=np.int64),
        np.array(offsets, dtype=np.int64),
        len(profile), n_faces, g))


def census_with_boundaries(m: int, g: int, profile: Sequence[int],
                           force_python: bool = False) -> int:
    """|T_{p1..pk}(m, g)|: boundary triangulations with m internal faces,
    genus g, simple vertex-disjoint boundaries of the given sizes, one
    root per boundary.

    With an empty profile this reduces to the rooted count tau(m/2, g)
    (there is no boundary to root at), taken from the plain census.
    """
    profile = tuple(profile)
    if not profile:
        if m % 2:
            return 0
        return census(m // 2, force_python=force_python).rooted_count(g)
    raw = boundary_configurations(m, g, profile, force_python=force_python)
    den = math.factorial(m) * 3 ** m
    q, r = divmod(raw, den)
    if r:
        raise ArithmeticError(
            f"boundary census {raw} not divisible by m!*3^m = {den} at "
            f"(m,g,profile)=({m},{g},{profile})")
    return q


def oracle_verify_rows(max_n: int, table) -> list[tuple[int, int, int, int, bool]]:
    """(n, g, oracle_count, recurrence_count, ok) rows for n <= max_n."""
    rows = []
    for n in range(1, max_n + 1):
        c = census(n)
        for g in range(0, (n + 1) // 2 + 1):
            oracle_count = c.rooted_count(g)
            rec_count = table.tau(n, g)
            rows.append((n, g, oracle_count, rec_count, oracle_count == rec_count))
    return rows
