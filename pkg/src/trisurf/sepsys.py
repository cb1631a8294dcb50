r"""
Bounded search for the separating systole.

The target is the shortest closed walk that is null-homologous yet
non-contractible (SNCC).  The search runs over spur-free closed walks
by increasing length: removing a spur shortens a walk without changing
its class, so the minimum is attained on spur-free walks.  Candidates
are generated per start vertex (walks through an earlier vertex were
already seen from there) by depth-first search with homology pruning: a
breadth-first table of minimal walk lengths per (vertex, homology
vector) state cuts every prefix that cannot close up with zero homology
within the remaining budget.

All not-found outcomes are bounded-inconclusive, never nonexistence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .map_core import CombMap
from .schema import is_contractible
from .topology import ClosedWalk, Surface, surface

DEFAULT_LMAX = 12

FOUND = "found"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SepsysResult:
    status: str
    lmax: int
    length: int | None = None
    witness: ClosedWalk | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND


def _zero(surf: Surface) -> tuple[int, ...]:
    return (0,) * (2 * surf.genus)


def _add(h: tuple[int, ...], hv: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(h, hv))


def _homology_distances(surf: Surface, v: int, radius: int) -> dict:
    """Min walk length from v to each (vertex, homology sum) state within
    ``radius``, avoiding vertices below v."""
    dist = {(v, _zero(surf)): 0}
    frontier = [(v, _zero(surf))]
    for step in range(1, radius + 1):
        nxt = []
        for u, h in frontier:
            for d in surf.out_darts[u]:
                w = surf.dart_end[d - 1]
                if w < v:
                    continue
                state = (w, _add(h, surf.dart_hvec[d - 1]))
                if state not in dist:
                    dist[state] = step
                    nxt.append(state)
        frontier = nxt
        if not frontier:
            break
    return dist


class _WalkSearch:
    """Per-map state for the null-homologous closed-walk enumeration."""

    def __init__(self, m: CombMap, lmax: int):
        self.map = m
        self.surf = surface(m)
        self.lmax = lmax
        self.radius = (lmax + 1) // 2
        self._dist: dict[int, dict] = {}

    def dist_table(self, v: int) -> dict:
        t = self._dist.get(v)
        if t is None:
            t = self._dist[v] = _homology_distances(self.surf, v, self.radius)
        return t

    def closed_walks(self, v: int, length: int) -> Iterator[tuple[int, ...]]:
        """Spur-free closed walks at v of exactly ``length`` with zero
        homology, avoiding vertices < v."""
        surf = self.surf
        alpha = self.map.alpha
        dtable = self.dist_table(v)
        radius = self.radius
        zero = _zero(surf)
        out: list[int] = []

        def rec(u: int, h: tuple[int, ...], t: int) -> Iterator[tuple[int, ...]]:
            if t == length:
                if u == v and h == zero:
                    first, last = out[0], out[-1]
                    if first != alpha[last - 1]:
                        yield tuple(out)
                return
            rem = length - t
            if rem <= radius:
                d0 = dtable.get((u, h))
                if d0 is None or d0 > rem:
                    return
            banned = alpha[out[-1] - 1] if out else 0
            for d in surf.out_darts[u]:
                if d == banned:
                    continue
                w = surf.dart_end[d - 1]
                if w < v:
                    continue
                out.append(d)
                yield from rec(w, _add(h, surf.dart_hvec[d - 1]), t + 1)
                out.pop()

        yield from rec(v, zero, 0)


def _canonical_witness(w: tuple[int, ...]) -> tuple[int, ...]:
    return ClosedWalk(w).min_rotation().darts


def sepsys_search(m: CombMap, lmax: int = DEFAULT_LMAX) -> SepsysResult:
    """Shortest null-homologous non-contractible closed walk of length
    <= lmax, or an explicitly bounded-inconclusive outcome.

    Equal-length witnesses are tie-broken by smallest dart sequence
    after canonical rotation.
    """
    if lmax < 1:
        return SepsysResult(INCONCLUSIVE, lmax)
    surf = surface(m)
    # on the sphere and the torus null-homologous implies contractible
    if surf.genus <= 1:
        return SepsysResult(INCONCLUSIVE, lmax)
    search = _WalkSearch(m, lmax)
    seen_class: dict[tuple[int, ...], bool] = {}
    for length in range(1, lmax + 1):
        hits: list[tuple[int, ...]] = []
        for v in range(surf.n_vertices):
            for w in search.closed_walks(v, length):
                key = _canonical_witness(w)
                verdict = seen_class.get(key)
                if verdict is None:
                    verdict = not is_contractible(m, w)
                    seen_class[key] = verdict
                if verdict:
                    hits.append(key)
        if hits:
            best = min(hits)
            return SepsysResult(FOUND, lmax, length, ClosedWalk(best))
    return SepsysResult(INCONCLUSIVE, lmax)


# -- simple cycles -------------------------------------------------------------


def iter_simple_cycles(m: CombMap, max_len: int) -> Iterator[tuple[int, ...]]:
    """All vertex-simple closed dart walks of length <= max_len, one
    representative per rotation (based at the walk's smallest vertex)."""
    surf = surface(m)
    max_len = min(max_len, surf.n_vertices)
    if max_len < 1:
        return
    path: list[int] = []

    def rec(v0: int, u: int, used: set[int]) -> Iterator[tuple[int, ...]]:
        for d in surf.out_darts[u]:
            w = surf.dart_end[d - 1]
            if w == v0 and path:
                yield tuple(path) + (d,)
            if w == v0 and not path:
                # length-1 loop
                yield (d,)
            if w <= v0 or w in used:
                continue
            if len(path) + 1 >= max_len:
                continue
            path.append(d)
            used.add(w)
            yield from rec(v0, w, used)
            used.remove(w)
            path.pop()

    for v0 in range(surf.n_vertices):
        yield from rec(v0, v0, set())


def canonical_cycle(m: CombMap, darts: Sequence[int]) -> tuple[int, ...]:
    """Least dart tuple over rotations (orientation kept)."""
    return ClosedWalk(tuple(darts)).min_rotation().darts


def sepsys_simple(m: CombMap, lmax: int = DEFAULT_LMAX) -> SepsysResult:
    """sepsys_search restricted to simple cycles (the simple separating
    systole observable)."""
    if lmax < 1:
        return SepsysResult(INCONCLUSIVE, lmax)
    surf = surface(m)
    if surf.genus <= 1:
        return SepsysResult(INCONCLUSIVE, lmax)
    zero = _zero(surf)
    best: tuple[int, tuple[int, ...]] | None = None
    for cyc in iter_simple_cycles(m, lmax):
        if best is not None and len(cyc) > best[0]:
            continue
        if surf.walk_class(cyc) != zero:
            continue
        if is_contractible(m, cyc):
            continue
        key = (len(cyc), canonical_cycle(m, cyc))
        if best is None or key < (best[0], best[1]):
            best = key
    if best is None:
        return SepsysResult(INCONCLUSIVE, lmax)
    return SepsysResult(FOUND, lmax, best[0], ClosedWalk(best[1]))
