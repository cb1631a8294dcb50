r"""
Cut, slit and glue surgeries with exact genus and face bookkeeping.

Cutting along a simple cycle duplicates its darts: each cut edge
(d, alpha(d)) becomes two boundary edges, the fresh partners forming
the two new boundary faces, and every cycle vertex splits into a left
and a right copy carrying the corresponding arc of its rotation.
Gluing reverses this by sewing two equal-size boundary faces together
with anti-aligned face walks (root edges matched), and slitting opens a
simple path between two boundaries, merging them into a single
boundary of size |b1| + |b2| + 2|path|.

Everything is pure: operations take immutable maps and return new
values plus the marking data needed to invert exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .map_core import (BoundaryMap, CombMap, InvalidMapError,
                       _euler_data_unchecked, faces)
from .topology import check_closed_walk, is_simple_cycle, walk_vertices


class SurgeryError(ValueError):
    pass


def _vnext_list(m: CombMap) -> list[int]:
    """vnext[d] = sigma(alpha(d)), 1-indexed with a dummy 0 slot."""
    out = [0] * (m.n_darts + 1)
    for d in range(1, m.n_darts + 1):
        out[d] = m.sigma[m.alpha[d - 1] - 1]
    return out


def _rotation_from(vnext: list[int], start: int) -> list[int]:
    cyc = [start]
    d = vnext[start]
    while d != start:
        cyc.append(d)
        d = vnext[d]
    return cyc


def _assemble(vnext: dict[int, int], alpha: dict[int, int], root: int
              ) -> tuple[CombMap, dict[int, int]]:
    """Build a CombMap from successor/involution dicts on arbitrary dart
    labels; returns the map plus the old-label -> new-label map."""
    old = sorted(vnext)
    relab = {d: i + 1 for i, d in enumerate(old)}
    n = len(old)
    sigma = [0] * n
    alph = [0] * n
    for d in old:
        # sigma = vperm o alpha
        sigma[relab[d] - 1] = relab[vnext[alpha[d]]]
        alph[relab[d] - 1] = relab[alpha[d]]
    return CombMap(tuple(sigma), tuple(alph), relab[root]), relab


def _face_cycle(sigma: dict[int, int] | list[int], start: int) -> list[int]:
    cyc = [start]
    d = sigma[start] if isinstance(sigma, dict) else sigma[start - 1]
    while d != start:
        cyc.append(d)
        d = sigma[d] if isinstance(sigma, dict) else sigma[d - 1]
    return cyc


@dataclass(frozen=True)
class CutResult:
    """Outcome of cutting a simple cycle, with everything needed to undo."""

    components: tuple[BoundaryMap, ...]
    length: int
    separating: bool
    genera: tuple[int, ...]
    internal_faces: tuple[int, ...]
    # (component index, boundary index) of the two cut sides; the side-l
    # boundary root is the fresh partner of the cycle's first dart, the
    # side-r root its same-direction copy.
    side_l: tuple[int, int]
    side_r: tuple[int, int]
    root_component: int


def cut_simple_cycle(m: CombMap, cycle) -> CutResult:
    """Cut along a simple cycle; one component of genus g-1 with two
    length-l boundaries if the cycle is non-separating, else two
    components of genera summing to g with one boundary each."""
    w = check_closed_walk(m, cycle)
    if not is_simple_cycle(m, w):
        raise SurgeryError("cut_simple_cycle needs a simple cycle")
    c = list(w.darts)
    if len({min(d, m.alpha_of(d)) for d in c}) != len(c):
        # only the 2-cycle (d, alpha(d)) can do this; it bounds the thin
        # edge disk, whose cut side is not a boundary triangulation
        raise SurgeryError("cycle traverses an edge twice")
    ell = len(c)
    n = m.n_darts
    verts = walk_vertices(m, c)

    vnext_base = _vnext_list(m)
    alpha: dict[int, int] = {d: m.alpha[d - 1] for d in range(1, n + 1)}
    vnext: dict[int, int] = {}
    on_cycle_vertex = set(verts)
    vt = walk_vertices(m, range(1, n + 1))  # start vertex of every dart
    for d in range(1, n + 1):
        if vt[d - 1] not in on_cycle_vertex:
            vnext[d] = vnext_base[d]

    N = [n + 1 + j for j in range(ell)]          # partners of c[j], side L
    M = [n + ell + 1 + j for j in range(ell)]    # partners of alpha(c[j]), side R
    old_alpha = {c[j]: m.alpha[c[j] - 1] for j in range(ell)}
    for j in range(ell):
        ab = old_alpha[c[j]]
        alpha[c[j]] = N[j]
        alpha[N[j]] = c[j]
        alpha[ab] = M[j]
        alpha[M[j]] = ab
    for j in range(ell):
        # rotation at the start vertex of c[j]: (c[j], y.., alpha(c[j-1]), x..)
        rot = _rotation_from(vnext_base, c[j])
        o_prev = old_alpha[c[j - 1]]
        p = rot.index(o_prev)
        ys = rot[1:p]
        xs = rot[p + 1:]
        # side L keeps the cycle darts, side R their reverses
        lrot = xs + [c[j], N[(j - 1) % ell]]
        rrot = [M[j]] + ys + [o_prev]
        for i, d in enumerate(lrot):
            vnext[d] = lrot[(i + 1) % len(lrot)]
        for i, d in enumerate(rrot):
            vnext[d] = rrot[(i + 1) % len(rrot)]

    # split into connected components over (vnext, alpha)
    comp: dict[int, int] = {}
    n_comp = 0
    for seed in sorted(vnext):
        if seed in comp:
            continue
        stack = [seed]
        comp[seed] = n_comp
        while stack:
            d = stack.pop()
            for nx in (vnext[d], alpha[d]):
                if nx not in comp:
                    comp[nx] = n_comp
                    stack.append(nx)
        n_comp += 1
    if n_comp not in (1, 2):
        raise AssertionError(f"cut produced {n_comp} components")

    # component roots: original root where it lives, a cut dart otherwise
    comp_root = {comp[m.root]: m.root}
    for cand in (c[0], old_alpha[c[0]]):
        comp_root.setdefault(comp[cand], cand)

    built: list[CombMap | None] = [None] * n_comp
    relabs: list[dict[int, int] | None] = [None] * n_comp
    for ci in range(n_comp):
        sub_vnext = {d: vnext[d] for d in vnext if comp[d] == ci}
        sub_alpha = {d: alpha[d] for d in sub_vnext}
        built[ci], relabs[ci] = _assemble(sub_vnext, sub_alpha, comp_root[ci])

    def boundary_of(fresh_root: int) -> tuple[int, tuple[int, ...]]:
        ci = comp[fresh_root]
        mm, rl = built[ci], relabs[ci]
        cyc = _face_cycle(list(mm.sigma), rl[fresh_root])
        return ci, tuple(cyc)

    ci_l, bl = boundary_of(N[0])
    ci_r, br = boundary_of(M[0])
    bounds: list[list[tuple[int, ...]]] = [[] for _ in range(n_comp)]
    bounds[ci_l].append(bl)
    side_l = (ci_l, len(bounds[ci_l]) - 1)
    bounds[ci_r].append(br)
    side_r = (ci_r, len(bounds[ci_r]) - 1)

    components = tuple(BoundaryMap(built[ci], tuple(bounds[ci]))
                       for ci in range(n_comp))
    eds = [_euler_data_unchecked(bm.map) for bm in components]
    genera = tuple(ed.genus for ed in eds)
    sizes = tuple(ed.faces - len(components[ci].boundaries)
                  for ci, ed in enumerate(eds))
    if len(bl) != ell or len(br) != ell:
        raise AssertionError("cut boundary size disagrees with cycle length")
    return CutResult(components, ell, n_comp == 2, genera, sizes,
                     side_l, side_r, comp[m.root])


def _sew(m: CombMap, fa: tuple[int, ...], fb: tuple[int, ...], root: int
         ) -> tuple[CombMap, dict[int, int]]:
    """Sew boundary faces fa, fb (face cycles from their roots) of one map
    together, anti-aligned with roots matched; returns the sewn map."""
    ell = len(fa)
    if len(fb) != ell:
        raise SurgeryError(f"boundary sizes differ: {len(fa)} vs {ell}")
    if set(fa) & set(fb):
        raise SurgeryError("boundaries share darts")
    n = m.n_darts
    vnext = {d: m.sigma[m.alpha[d - 1] - 1] for d in range(1, n + 1)}
    vprev = {v: k for k, v in vnext.items()}
    alpha = {d: m.alpha[d - 1] for d in range(1, n + 1)}
    gone = set(fa) | set(fb)
    if root in gone:
        raise SurgeryError("root dart lies on a glued boundary")

    pair = {fa[p]: fb[-p % ell] for p in range(ell)}
    for x, y in pair.items():
        ax, ay = alpha[x], alpha[y]
        if ax in gone or ay in gone:
            raise SurgeryError("boundary edge glued to a boundary edge")
    for x, y in pair.items():
        ax, ay = alpha[x], alpha[y]
        alpha[ax] = ay
        alpha[ay] = ax
    # vertex splice: x merges with the vertex of sigma(y)
    for x, y in pair.items():
        ynext = m.sigma[y - 1]
        vnext[vprev[x]], vnext[vprev[ynext]] = vnext[ynext], vnext[x]
        vprev[vnext[vprev[x]]] = vprev[x]
        vprev[vnext[vprev[ynext]]] = vprev[ynext]
    for d in gone:
        del vnext[d]
        del alpha[d]
    return _assemble(vnext, alpha, root)


def glue_boundaries(cut: CutResult) -> CombMap:
    """Exact inverse of cut_simple_cycle: glue the two cut boundaries so
    the root edges match; restores the rooted map."""
    if cut.separating:
        a = cut.components[cut.side_l[0]]
        b = cut.components[cut.side_r[0]]
        if cut.side_l[0] == cut.side_r[0]:
            raise SurgeryError("separating cut with both sides in one component")
        # disjoint union: shift b's darts
        shift = a.map.n_darts
        sigma = list(a.map.sigma) + [d + shift for d in b.map.sigma]
        alpha = list(a.map.alpha) + [d + shift for d in b.map.alpha]
        root = (a.map.root if cut.root_component == cut.side_l[0]
                else b.map.root + shift)
        merged = CombMap(tuple(sigma), tuple(alpha), root)
        fa = a.boundaries[cut.side_l[1]]
        fb = tuple(d + shift for d in b.boundaries[cut.side_r[1]])
        out, _ = _sew(merged, fa, fb, root)
        return out
    bm = cut.components[0]
    fa = bm.boundaries[cut.side_l[1]]
    fb = bm.boundaries[cut.side_r[1]]
    out, _ = _sew(bm.map, fa, fb, bm.map.root)
    return out


def glue_maps(a: BoundaryMap, ia: int, b: BoundaryMap, ib: int) -> CombMap:
    """Glue boundary ia of one map to boundary ib of another (roots
    matched); genus adds, internal faces add."""
    shift = a.map.n_darts
    sigma = list(a.map.sigma) + [d + shift for d in b.map.sigma]
    alpha = list(a.map.alpha) + [d + shift for d in b.map.alpha]
    merged = CombMap(tuple(sigma), tuple(alpha), a.map.root)
    fb = tuple(d + shift for d in b.boundaries[ib])
    out, _ = _sew(merged, a.boundaries[ia], fb, a.map.root)
    return out


def cut_disconnects(m: CombMap, cycle) -> bool:
    """Whether cutting the simple cycle separates the surface.

    Equivalent to len(cut_simple_cycle(m, cycle).components) == 2 but
    runs on the face-adjacency graph: the cut pieces are unions of faces
    glued along non-cut edges.
    """
    w = check_closed_walk(m, cycle)
    if not is_simple_cycle(m, w):
        raise SurgeryError("cut_disconnects needs a simple cycle")
    if len({min(d, m.alpha_of(d)) for d in w.darts}) != len(w.darts):
        raise SurgeryError("cycle traverses an edge twice")
    cut_edges = set()
    for d in w.darts:
        cut_edges.add(d)
        cut_edges.add(m.alpha_of(d))
    face_list = faces(m)
    face_of = {}
    for i, cyc in enumerate(face_list):
        for d in cyc:
            face_of[d] = i
    seen = [False] * len(face_list)
    seen[0] = True
    stack = [0]
    reached = 1
    while stack:
        f = stack.pop()
        for d in face_list[f]:
            if d in cut_edges:
                continue
            u = face_of[m.alpha_of(d)]
            if not seen[u]:
                seen[u] = True
                reached += 1
                stack.append(u)
    return reached < len(face_list)


# -- slits ----------------------------------------------------------------------


@dataclass(frozen=True)
class SlitResult:
    """A slit-open path (or the empty-path merge of touching boundaries).

    The merged boundary replaces the two inputs; ``side_l``/``side_r``
    list the relabeled fresh darts along the doubled path (empty for the
    merge case), and the markings keep the merged-boundary positions of
    the four split-vertex corners so the slit can be closed again.
    """

    result: BoundaryMap
    boundary_index: int
    path_length: int
    side_l: tuple[int, ...]
    side_r: tuple[int, ...]
    marks: tuple[int, ...]


def _boundary_corner(m: CombMap, bound: tuple[int, ...], v: int,
                     vt: list[int]) -> tuple[int, int]:
    """(f_in, f_out): the boundary-face darts around its corner at v."""
    for i, d in enumerate(bound):
        if vt[d - 1] == v:
            return bound[i - 1], d
    raise SurgeryError(f"boundary has no corner at vertex {v}")


def slit_path(bm: BoundaryMap, path) -> SlitResult:
    """Cut open a simple path joining two distinct boundaries (the path
    interior stays off every boundary); the two boundaries and the
    doubled path merge into one boundary of size |b1| + |b2| + 2|path|.

    An empty path is the touching-boundaries merge: pass the shared
    vertex via merge_touching_boundaries instead.
    """
    path = tuple(path)
    if not path:
        raise SurgeryError("empty path: use merge_touching_boundaries")
    m = bm.map
    n = m.n_darts
    vt = walk_vertices(m, range(1, n + 1))
    pverts = [vt[path[0] - 1]] + [vt[m.alpha_of(d) - 1] for d in path]
    if len(set(pverts)) != len(pverts):
        raise SurgeryError("slit path must be simple")
    for i, d in enumerate(path):
        if i and vt[d - 1] != pverts[i]:
            raise SurgeryError("path darts do not chain")

    bverts = [{vt[d - 1] for d in b} for b in bm.boundaries]
    b1 = next((i for i, vs in enumerate(bverts) if pverts[0] in vs), None)
    b2 = next((i for i, vs in enumerate(bverts) if pverts[-1] in vs), None)
    if b1 is None or b2 is None:
        raise SurgeryError("path endpoints must lie on boundaries")
    if b1 == b2:
        raise SurgeryError("path endpoints on one boundary are unsupported")
    interior = pverts[1:-1]
    all_bverts = set().union(*bverts) if bverts else set()
    for v in interior:
        if v in all_bverts:
            raise SurgeryError(f"path touches a boundary at interior vertex {v}")

    k = len(path)
    vnext_base = _vnext_list(m)
    alpha: dict[int, int] = {d: m.alpha[d - 1] for d in range(1, n + 1)}
    old_alpha = dict(alpha)
    vnext: dict[int, int] = {}
    split = set(pverts)
    for d in range(1, n + 1):
        if vt[d - 1] not in split:
            vnext[d] = vnext_base[d]

    N = [n + 1 + j for j in range(k)]
    M = [n + k + 1 + j for j in range(k)]
    for j in range(k):
        ab = alpha[path[j]]
        alpha[path[j]] = N[j]
        alpha[N[j]] = path[j]
        alpha[ab] = M[j]
        alpha[M[j]] = ab

    def install(rot: list[int]) -> None:
        for i, d in enumerate(rot):
            vnext[d] = rot[(i + 1) % len(rot)]

    # interior path vertices split like cycle vertices
    for j in range(1, k):
        rot = _rotation_from(vnext_base, path[j])
        o_prev = old_alpha[path[j - 1]]
        p = rot.index(o_prev)
        install(rot[p + 1:] + [path[j], N[j - 1]])
        install([M[j]] + rot[1:p] + [o_prev])

    # endpoint on b1: rotation written from the boundary corner
    f1_in, f1_out = _boundary_corner(m, bm.boundaries[b1], pverts[0], vt)
    rot = _rotation_from(vnext_base, f1_out)
    p = rot.index(path[0])
    install(rot[: p + 1])            # (f1_out, z.., path[0])
    install([M[0]] + rot[p + 1:])    # (M0, w..)

    # endpoint on b2, seen along the reversed path
    f2_in, f2_out = _boundary_corner(m, bm.boundaries[b2], pverts[-1], vt)
    rot = _rotation_from(vnext_base, f2_out)
    rev_first = old_alpha[path[-1]]
    p = rot.index(rev_first)
    install(rot[: p + 1])                 # (f2_out, z'.., alpha(path[-1]))
    install([N[k - 1]] + rot[p + 1:])     # (N_{k-1}, w'..)

    new_map, relab = _assemble(vnext, alpha, m.root)
    merged = tuple(relab[d] for d in _face_cycle_dict(vnext, alpha, M[0]))
    keep = [tuple(relab[d] for d in b)
            for i, b in enumerate(bm.boundaries) if i not in (b1, b2)]
    boundaries = tuple(keep) + (merged,)
    out = BoundaryMap(new_map, boundaries)
    pos = {d: i for i, d in enumerate(merged)}
    marks = (pos[relab[M[0]]], pos[relab[M[k - 1]]],
             pos[relab[N[k - 1]]], pos[relab[N[0]]])
    return SlitResult(out, len(boundaries) - 1, k,
                      tuple(relab[d] for d in N), tuple(relab[d] for d in M),
                      marks)


def _face_cycle_dict(vnext: dict[int, int], alpha: dict[int, int],
                     start: int) -> list[int]:
    cyc = [start]
    d = vnext[alpha[start]]
    while d != start:
        cyc.append(d)
        d = vnext[alpha[d]]
    return cyc


def merge_touching_boundaries(bm: BoundaryMap, b1: int, b2: int) -> SlitResult:
    """Open two boundaries that share exactly one vertex into a single
    boundary of size |b1| + |b2| (the empty-path slit)."""
    if b1 == b2:
        raise SurgeryError("need two distinct boundaries")
    m = bm.map
    n = m.n_darts
    vt = walk_vertices(m, range(1, n + 1))
    vs1 = {vt[d - 1] for d in bm.boundaries[b1]}
    vs2 = {vt[d - 1] for d in bm.boundaries[b2]}
    shared = vs1 & vs2
    if len(shared) != 1:
        raise SurgeryError(f"boundaries share {len(shared)} vertices, need 1")
    v = shared.pop()
    f1_in, f1_out = _boundary_corner(m, bm.boundaries[b1], v, vt)
    f2_in, f2_out = _boundary_corner(m, bm.boundaries[b2], v, vt)

    vnext_base = _vnext_list(m)
    alpha = {d: m.alpha[d - 1] for d in range(1, n + 1)}
    vnext = {}
    for d in range(1, n + 1):
        if vt[d - 1] != v:
            vnext[d] = vnext_base[d]
    rot = _rotation_from(vnext_base, f1_out)
    p = rot.index(f2_out)
    for part in (rot[:p], rot[p:]):
        for i, d in enumerate(part):
            vnext[d] = part[(i + 1) % len(part)]
    new_map, relab = _assemble(vnext, alpha, m.root)
    merged = tuple(relab[d] for d in _face_cycle_dict(vnext, alpha, f1_out))
    keep = [tuple(relab[d] for d in b)
            for i, b in enumerate(bm.boundaries) if i not in (b1, b2)]
    boundaries = tuple(keep) + (merged,)
    pos = {d: i for i, d in enumerate(merged)}
    marks = (pos[relab[f1_out]], pos[relab[f2_out]])
    return SlitResult(BoundaryMap(new_map, boundaries), len(boundaries) - 1,
                      0, (), (), marks)


def close_slit(res: SlitResult) -> BoundaryMap:
    """Exact inverse of slit_path: re-identify the doubled path edges."""
    if res.path_length == 0:
        return split_boundary_at_marks(res)
    bm = res.result
    m = bm.map
    n = m.n_darts
    vnext = {d: m.sigma[m.alpha[d - 1] - 1] for d in range(1, n + 1)}
    vprev = {v: kk for kk, v in vnext.items()}
    alpha = {d: m.alpha[d - 1] for d in range(1, n + 1)}
    k = res.path_length
    N, M = res.side_l, res.side_r
    gone = set(N) | set(M)
    path = [alpha[N[j]] for j in range(k)]          # the surviving path darts
    path_rev = [alpha[M[j]] for j in range(k)]      # their restored partners
    for j in range(k):
        alpha[path[j]] = path_rev[j]
        alpha[path_rev[j]] = path[j]

    def splice(x: int, r: int) -> None:
        # merge the vertices carrying the vanishing darts x and r
        vnext[vprev[x]], vnext[vprev[r]] = vnext[r], vnext[x]
        vprev[vnext[vprev[x]]] = vprev[x]
        vprev[vnext[vprev[r]]] = vprev[r]

    def merge_after(x: int, r: int) -> None:
        # insert r's rotation (minus r itself) right after the surviving
        # dart x, closing the corner that the slit opened
        if vnext[r] == r:
            return
        a = vnext[x]
        vnext[x] = vnext[r]
        vprev[vnext[r]] = x
        vnext[vprev[r]] = a
        vprev[a] = vprev[r]

    # interior vertices: N_{j-1} sits with e_j on side l, M_j on side r
    for j in range(1, k):
        splice(N[j - 1], M[j])
    # endpoints carry a single fresh dart each
    merge_after(path[0], M[0])
    merge_after(path_rev[k - 1], N[k - 1])
    for d in gone:
        del vnext[d]
        del alpha[d]
    new_map, relab = _assemble(vnext, alpha, m.root)

    # recover the two boundaries from the merged-boundary markings
    # marks = positions of (M_0, M_{k-1}, N_{k-1}, N_0) in the merged walk
    merged = res.result.boundaries[res.boundary_index]
    ell = len(merged)
    f2_out_old = merged[(res.marks[1] + 1) % ell]
    f1_out_old = merged[(res.marks[3] + 1) % ell]
    bounds = [tuple(relab[d] for d in b)
              for i, b in enumerate(res.result.boundaries)
              if i != res.boundary_index]
    b1cyc = tuple(relab[d] for d in _face_cycle_dict(vnext, alpha, f1_out_old))
    b2cyc = tuple(relab[d] for d in _face_cycle_dict(vnext, alpha, f2_out_old))
    return BoundaryMap(new_map, tuple(bounds) + (b1cyc, b2cyc))


def split_boundary_at_marks(res: SlitResult) -> BoundaryMap:
    """Inverse of merge_touching_boundaries: re-join the two rotations at
    the marked corners, splitting the merged boundary back in two."""
    bm = res.result
    m = bm.map
    merged = bm.boundaries[res.boundary_index]
    p1, p2 = res.marks
    f1_out, f2_out = merged[p1], merged[p2]
    n = m.n_darts
    vnext = {d: m.sigma[m.alpha[d - 1] - 1] for d in range(1, n + 1)}
    alpha = {d: m.alpha[d - 1] for d in range(1, n + 1)}
    vl = [0] + [vnext[d] for d in range(1, n + 1)]
    rot_a = _rotation_from(vl, f1_out)
    rot_b = _rotation_from(vl, f2_out)
    if f2_out in rot_a:
        raise SurgeryError("marks lie on one vertex; nothing to split")
    joined = rot_a + rot_b
    for i, d in enumerate(joined):
        vnext[d] = joined[(i + 1) % len(joined)]
    new_map, relab = _assemble(vnext, alpha, m.root)
    bounds = [tuple(relab[d] for d in b)
              for i, b in enumerate(bm.boundaries) if i != res.boundary_index]
    b1cyc = tuple(relab[d] for d in _face_cycle_dict(vnext, alpha, f1_out))
    b2cyc = tuple(relab[d] for d in _face_cycle_dict(vnext, alpha, f2_out))
    return BoundaryMap(new_map, tuple(bounds) + (b1cyc, b2cyc))
