r"""
Rotation-system representation of triangulations.

A map on an oriented surface is encoded by two permutations acting on
*darts* (edge sides), which are the integers ``1..n_darts``:

* ``sigma`` -- its cycles are the faces, read in face order.  For a
  triangulation every cycle has length 3.
* ``alpha`` -- a fixed-point-free involution pairing the two darts of
  each edge.

Orientation convention, fixed once and used by every other module:
the *vertices* are the cycles of ``sigma o alpha`` (apply ``alpha``,
then ``sigma``).  A dart ``d`` starts at the vertex of its
``sigma o alpha`` cycle and ends at the start of ``alpha(d)``.  With
this convention the face cycle ``(d, sigma(d), sigma^2(d))`` is a
closed walk.

Maps are immutable; all operations return new values.  The root dart
distinguishes an oriented edge side; the root face is the sigma-cycle
containing it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class InvalidMapError(ValueError):
    """Raised when an operation requires a valid map and gets garbage."""


@dataclass(frozen=True)
class CombMap:
    """A rooted combinatorial map: two permutations on darts plus a root.

    ``sigma`` and ``alpha`` are stored as image tuples: position ``i``
    holds the image of dart ``i + 1``.
    """

    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    root: int = 1

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    def sigma_of(self, d: int) -> int:
        return self.sigma[d - 1]

    def alpha_of(self, d: int) -> int:
        return self.alpha[d - 1]

    def vperm_of(self, d: int) -> int:
        """Next dart around the start vertex of ``d`` (= sigma(alpha(d)))."""
        return self.sigma[self.alpha[d - 1] - 1]

    def darts(self) -> range:
        return range(1, self.n_darts + 1)

    @staticmethod
    def from_cycles(sigma_cycles: Iterable[Sequence[int]],
                    alpha_pairs: Iterable[Sequence[int]],
                    root: int = 1) -> "CombMap":
        """Build a map from cycle notation (1-indexed darts)."""
        n = sum(len(c) for c in sigma_cycles)
        sigma = [0] * n
        for cyc in sigma_cycles:
            for a, b in zip(cyc, cyc[1:] + type(cyc)([cyc[0]])):
                sigma[a - 1] = b
        alpha = [0] * n
        for a, b in alpha_pairs:
            alpha[a - 1] = b
            alpha[b - 1] = a
        return CombMap(tuple(sigma), tuple(alpha), root)


@dataclass(frozen=True)
class EulerData:
    vertices: int
    edges: int
    faces: int
    genus: int


@dataclass(frozen=True)
class BoundaryMap:
    """A triangulation with boundaries.

    ``boundaries`` lists, per boundary, the darts of its face cycle in
    sigma order starting at that boundary's root dart.  All other faces
    must be triangles.
    """

    map: CombMap
    boundaries: tuple[tuple[int, ...], ...]

    @property
    def boundary_roots(self) -> tuple[int, ...]:
        return tuple(b[0] for b in self.boundaries)


@dataclass(frozen=True)
class BoundaryProfile:
    lengths: tuple[int, ...]
    internal_faces: int
    genus: int


def _perm_cycles(images: Sequence[int]) -> list[list[int]]:
    """Cycles of a permutation given as a 1-indexed image array."""
    n = len(images)
    seen = [False] * n
    cycles = []
    for start in range(1, n + 1):
        if seen[start - 1]:
            continue
        cyc = []
        d = start
        while not seen[d - 1]:
            seen[d - 1] = True
            cyc.append(d)
            d = images[d - 1]
        cycles.append(cyc)
    return cycles


def _is_permutation(images: Sequence[int]) -> bool:
    n = len(images)
    return sorted(images) == list(range(1, n + 1))


def faces(m: CombMap) -> list[list[int]]:
    """Sigma-cycles, each a face read in face order."""
    return _perm_cycles(m.sigma)


def vertex_cycles(m: CombMap) -> list[list[int]]:
    """Cycles of sigma o alpha; one per vertex of the map."""
    vp = [m.sigma[m.alpha[d] - 1] for d in range(m.n_darts)]
    return _perm_cycles(vp)


def vertex_table(m: CombMap) -> list[int]:
    """vertex_table[d-1] = id of the vertex at which dart d starts."""
    table = [0] * m.n_darts
    for i, cyc in enumerate(vertex_cycles(m)):
        for d in cyc:
            table[d - 1] = i
    return table


def dart_endpoints(m: CombMap) -> tuple[list[int], list[int]]:
    """(start, end) vertex ids per dart; end(d) = start(alpha(d))."""
    start = vertex_table(m)
    end = [start[m.alpha[d] - 1] for d in range(m.n_darts)]
    return start, end


def is_connected(m: CombMap) -> bool:
    """Transitivity of the group generated by sigma and alpha."""
    n = m.n_darts
    if n == 0:
        return True
    seen = [False] * n
    stack = [1]
    seen[0] = True
    count = 0
    while stack:
        d = stack.pop()
        count += 1
        for nxt in (m.sigma[d - 1], m.alpha[d - 1]):
            if not seen[nxt - 1]:
                seen[nxt - 1] = True
                stack.append(nxt)
    return count == n


def validate(m: CombMap) -> list[str]:
    """Return every violated map invariant; an empty list means valid.

    Checks permutation-ness of sigma, the fixed-point-free involution
    property of alpha, connectivity, triangularity of faces, and root
    range.  Diagnostics name the offending darts.
    """
    v: list[str] = []
    n = m.n_darts
    if n == 0:
        return ["map has no darts"]
    if len(m.alpha) != n:
        return [f"sigma and alpha sizes differ: {n} vs {len(m.alpha)}"]
    if n % 6 != 0:
        v.append(f"n_darts={n} is not a multiple of 6")
    if not _is_permutation(m.sigma):
        v.append("sigma is not a permutation")
        return v
    if not _is_permutation(m.alpha):
        v.append("alpha is not a permutation")
        return v
    for d in m.darts():
        if m.alpha[d - 1] == d:
            v.append(f"alpha({d})={d}")
        elif m.alpha[m.alpha[d - 1] - 1] != d:
            v.append(f"alpha not an involution at dart {d}")
    for cyc in faces(m):
        if len(cyc) != 3:
            v.append(f"face {tuple(cyc)} has degree {len(cyc)}, expected 3")
    if not (1 <= m.root <= n):
        v.append(f"root dart {m.root} out of range 1..{n}")
    if not is_connected(m):
        v.append("not connected")
    return v


def euler_data(m: CombMap) -> EulerData:
    """V, E, F and the genus of a valid triangulation."""
    bad = validate(m)
    if bad:
        raise InvalidMapError("; ".join(bad))
    return _euler_data_unchecked(m)


def _euler_data_unchecked(m: CombMap) -> EulerData:
    V = len(vertex_cycles(m))
    E = m.n_darts // 2
    F = len(faces(m))
    chi = V - E + F
    if chi % 2 != 0 or chi > 2:
        raise InvalidMapError(f"Euler characteristic {chi} is not of the form 2-2g")
    return EulerData(V, E, F, (2 - chi) // 2)


def genus_of(m: CombMap) -> int:
    return _euler_data_unchecked(m).genus


def canonical_form(m: CombMap) -> CombMap:
    """Deterministic relabeling by breadth-first traversal from the root.

    Two rooted maps are isomorphic iff their canonical forms are equal
    field by field.  The root dart is relabeled to 1.
    """
    bad = validate(m)
    if bad:
        raise InvalidMapError("; ".join(bad))
    return _canonical_form_unchecked(m)


def _canonical_form_unchecked(m: CombMap) -> CombMap:
    n = m.n_darts
    new_label = [0] * n
    order = [0] * n
    new_label[m.root - 1] = 1
    order[0] = m.root
    head, count = 0, 1
    sigma, alpha = m.sigma, m.alpha
    while head < count:
        d = order[head]
        head += 1
        for nxt in (sigma[d - 1], alpha[d - 1]):
            if new_label[nxt - 1] == 0:
                count += 1
                new_label[nxt - 1] = count
                order[count - 1] = nxt
    new_sigma = [0] * n
    new_alpha = [0] * n
    for d in range(1, n + 1):
        new_sigma[new_label[d - 1] - 1] = new_label[sigma[d - 1] - 1]
        new_alpha[new_label[d - 1] - 1] = new_label[alpha[d - 1] - 1]
    return CombMap(tuple(new_sigma), tuple(new_alpha), 1)


def canonical_key(m: CombMap) -> tuple:
    c = _canonical_form_unchecked(m)
    return (c.sigma, c.alpha)


def relabel(m: CombMap, perm: Sequence[int]) -> CombMap:
    """Rename darts by ``perm`` (image array, 1-indexed); same rooted map."""
    n = m.n_darts
    sigma = [0] * n
    alpha = [0] * n
    for d in range(1, n + 1):
        sigma[perm[d - 1] - 1] = perm[m.sigma[d - 1] - 1]
        alpha[perm[d - 1] - 1] = perm[m.alpha[d - 1] - 1]
    return CombMap(tuple(sigma), tuple(alpha), perm[m.root - 1])


# -- boundary maps -----------------------------------------------------------


def validate_boundary_map(bm: BoundaryMap) -> list[str]:
    """Violated invariants of a triangulation with boundaries."""
    m = bm.map
    v: list[str] = []
    n = m.n_darts
    if not _is_permutation(m.sigma) or not _is_permutation(m.alpha):
        return ["underlying sigma/alpha not permutations"]
    for d in m.darts():
        if m.alpha[d - 1] == d or m.alpha[m.alpha[d - 1] - 1] != d:
            v.append(f"alpha not a fixed-point-free involution at dart {d}")
    if not is_connected(m):
        v.append("not connected")
    if v:
        return v

    face_list = faces(m)
    face_of = {}
    for i, cyc in enumerate(face_list):
        for d in cyc:
            face_of[d] = i
    boundary_face_ids = []
    for b in bm.boundaries:
        if not b:
            v.append("empty boundary cycle")
            continue
        i = face_of[b[0]]
        cyc = face_list[i]
        k = cyc.index(b[0])
        if list(b) != cyc[k:] + cyc[:k]:
            v.append(f"boundary {b} is not a sigma-cycle")
        boundary_face_ids.append(i)
    if len(set(boundary_face_ids)) != len(boundary_face_ids):
        v.append("two boundaries share a face")
    if v:
        return v

    vt = vertex_table(m)
    seen_vertices: dict[int, int] = {}
    for bi, b in enumerate(bm.boundaries):
        verts = [vt[d - 1] for d in b]
        if len(set(verts)) != len(verts):
            v.append(f"boundary {bi} is not simple (repeated vertex)")
        for w in verts:
            if w in seen_vertices and seen_vertices[w] != bi:
                v.append(f"boundaries {seen_vertices[w]} and {bi} share vertex {w}")
            seen_vertices[w] = bi
    bset = set(boundary_face_ids)
    for i, cyc in enumerate(face_list):
        if i not in bset and len(cyc) != 3:
            v.append(f"internal face {tuple(cyc)} has degree {len(cyc)}")
    return v


def boundary_profile(bm: BoundaryMap) -> BoundaryProfile:
    """Boundary lengths in list order, plus internal face count and genus."""
    bad = validate_boundary_map(bm)
    if bad:
        raise InvalidMapError("; ".join(bad))
    lengths = tuple(len(b) for b in bm.boundaries)
    ed = _euler_data_unchecked(bm.map)
    return BoundaryProfile(lengths, ed.faces - len(lengths), ed.genus)


# -- serialization -----------------------------------------------------------


def to_json_dict(obj: CombMap | BoundaryMap) -> dict:
    if isinstance(obj, BoundaryMap):
        m = obj.map
        d = to_json_dict(m)
        d["boundaries"] = [list(b) for b in obj.boundaries]
        return d
    return {
        "n_darts": obj.n_darts,
        "sigma": list(obj.sigma),
        "alpha": list(obj.alpha),
        "root": obj.root,
    }


def to_json(obj: CombMap | BoundaryMap) -> str:
    return json.dumps(to_json_dict(obj), sort_keys=True, separators=(",", ":"))


def from_json_dict(d: dict) -> CombMap | BoundaryMap:
    try:
        n = int(d["n_darts"])
        sigma = tuple(int(x) for x in d["sigma"])
        alpha = tuple(int(x) for x in d["alpha"])
        root = int(d.get("root", 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidMapError(f"malformed map object: {exc}") from None
    if len(sigma) != n or len(alpha) != n:
        raise InvalidMapError("sigma/alpha length disagrees with n_darts")
    m = CombMap(sigma, alpha, root)
    if "boundaries" in d and d["boundaries"] is not None:
        bounds = tuple(tuple(int(x) for x in b) for b in d["boundaries"])
        return BoundaryMap(m, bounds)
    return m


def from_json(text: str) -> CombMap | BoundaryMap:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidMapError(f"not JSON: {exc}") from None
    if not isinstance(d, dict):
        raise InvalidMapError("map file must hold a JSON object")
    return from_json_dict(d)
