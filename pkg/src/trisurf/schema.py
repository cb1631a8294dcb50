r"""
Surface-group words: canonical polygonal schema and Dehn's algorithm.

The fundamental group of a genus-g triangulation is reached in three
steps, tracking generator substitutions throughout so that every dart
ends up expressed as a word in the canonical generators
a1, b1, .., ag, bg with relator a1 b1 a1^-1 b1^-1 ...:

1. Contract a spanning tree: presentation over the chords, one relator
   per face (tree darts read as the empty word).
2. Contract a spanning cotree of the dual: glue faces across cotree
   chords, eliminating one chord per gluing, until a single 4g-letter
   one-vertex polygon word remains.
3. Normalize the polygon: repeatedly pick a linked pair x..y..x^-1..y^-1
   and collect it into a leading commutator block by four cut-and-glue
   moves, each a Tietze transformation with an explicit expression for
   the eliminated letter.

Words use signed ints internally (+i / -i for the i-th generator and
its inverse) and single characters ('a'/'A', ...) in the Dehn engine,
where the hot loops are plain string scans.

Contractibility is decided by homology in genus <= 1 and by Dehn's
algorithm on the canonical presentation in genus >= 2; free homotopy by
homology in genus 1 and by Dehn's conjugacy procedure (cyclic reduction
plus closure under half-relator exchanges) in genus >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .map_core import CombMap
from .topology import check_closed_walk, surface

Word = tuple[int, ...]

MAX_SCHEMA_GENUS = 13  # 2g letters must fit one ascii case each


def inv_word(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def abelianized(w: Sequence[int], n_gens: int) -> tuple[int, ...]:
    acc = [0] * n_gens
    for x in w:
        acc[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(acc)


def _word_str(w: Sequence[int]) -> str:
    # generator i -> chr('a'+i-1); inverse -> uppercase
    return "".join(chr(96 + x) if x > 0 else chr(64 - x) for x in w)


def free_reduce_str(s: str) -> str:
    out: list[str] = []
    for ch in s:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def _cyclic_free_reduce(s: str) -> str:
    while len(s) >= 2 and s[0] == s[-1].swapcase():
        s = s[1:-1]
    return s


def _min_rotation(s: str) -> str:
    if not s:
        return s
    return min(s[i:] + s[:i] for i in range(len(s)))


class SchemaError(AssertionError):
    """Internal inconsistency while building the canonical schema."""


@dataclass
class Schema:
    """Canonical-presentation data for one triangulation."""

    genus: int
    relator: Word
    dart_words: list[Word]
    relator_str: str = ""
    _replace_big: dict[str, str] = field(default_factory=dict)
    _replace_half: dict[str, str] = field(default_factory=dict)
    _trivial_memo: dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        g = self.genus
        self.relator_str = _word_str(self.relator)
        if g >= 2:
            big, half = {}, {}
            for base in (self.relator_str, _word_str(inv_word(self.relator))):
                for r in range(len(base)):
                    rot = base[r:] + base[:r]
                    key = rot[: 2 * g + 1]
                    rep = _word_inv_str(rot[2 * g + 1:])
                    if key in big and big[key] != rep:
                        raise SchemaError("ambiguous long-subword replacement")
                    big[key] = rep
                    hkey = rot[: 2 * g]
                    hrep = _word_inv_str(rot[2 * g:])
                    if hkey not in half:
                        half[hkey] = hrep
            self._replace_big = big
            self._replace_half = half

    # -- word utilities ----------------------------------------------------

    def walk_word(self, darts: Sequence[int]) -> str:
        parts = []
        for d in darts:
            parts.append(_word_str(self.dart_words[d - 1]))
        return free_reduce_str("".join(parts))

    def dehn_reduce(self, s: str) -> str:
        """Greedy big-subword replacements until none applies (word form)."""
        s = free_reduce_str(s)
        big = self._replace_big
        changed = True
        while changed and s:
            changed = False
            for key, rep in big.items():
                i = s.find(key)
                if i >= 0:
                    s = free_reduce_str(s[:i] + rep + s[i + len(key):])
                    changed = True
                    break
        return s

    def is_trivial(self, s: str) -> bool:
        if self.genus < 2:
            raise SchemaError("Dehn engine is for genus >= 2")
        s = free_reduce_str(s)
        if not s:
            return True
        memo = self._trivial_memo
        key = _min_rotation(_cyclic_free_reduce(s))
        hit = memo.get(key)
        if hit is None:
            hit = self.dehn_reduce(s) == ""
            memo[key] = hit
        return hit

    def dehn_cyclic_reduce(self, s: str) -> str:
        g = self.genus
        s = _cyclic_free_reduce(free_reduce_str(s))
        big = self._replace_big
        klen = 2 * g + 1
        changed = True
        while changed and len(s) >= klen:
            changed = False
            doubled = s + s[: klen - 1]
            for key, rep in big.items():
                i = doubled.find(key)
                if 0 <= i < len(s):
                    s = s[i:] + s[:i]
                    s = _cyclic_free_reduce(free_reduce_str(rep + s[klen:]))
                    changed = True
                    break
        return s

    def conjugacy_set(self, s: str) -> frozenset[str]:
        """Canonical rotations of everything reachable from s by
        length-preserving half-relator exchanges (after cyclic Dehn
        reduction); two words are conjugate iff their sets intersect."""
        s = self.dehn_cyclic_reduce(s)
        while True:
            seen = {_min_rotation(s)}
            frontier = [s]
            shorter = None
            while frontier and shorter is None:
                cur = frontier.pop()
                n = len(cur)
                if n < 2 * self.genus:
                    continue
                doubled = cur + cur[: 2 * self.genus - 1]
                for key, rep in self._replace_half.items():
                    start = 0
                    while True:
                        i = doubled.find(key, start)
                        if i < 0 or i >= n:
                            break
                        start = i + 1
                        rot = cur[i:] + cur[:i]
                        cand = _cyclic_free_reduce(
                            free_reduce_str(rep + rot[len(key):]))
                        cand = self.dehn_cyclic_reduce(cand)
                        if len(cand) < n:
                            shorter = cand
                            break
                        ck = _min_rotation(cand)
                        if ck not in seen:
                            seen.add(ck)
                            frontier.append(cand)
                    if shorter is not None:
                        break
            if shorter is None:
                return frozenset(seen)
            s = shorter

    def n_generators(self) -> int:
        return 2 * self.genus


def _word_inv_str(s: str) -> str:
    return s[::-1].swapcase()


# -- construction --------------------------------------------------------------


def _glue_words(a: Word, b: Word, sym: int) -> Word:
    """Glue two face relators along symbol ``sym`` (+ in a, - in b)."""
    ia = a.index(sym)
    ib = b.index(-sym)
    a_rot = a[ia:] + a[:ia]
    b_rot = b[ib:] + b[:ib]
    return a_rot[1:] + b_rot[1:]


def _check_polygon(word: Word, n_letters: int, where: str) -> None:
    from collections import Counter

    c = Counter(word)
    for x, k in c.items():
        if k != 1 or c.get(-x, 0) != 1:
            raise SchemaError(f"{where}: letter {x} not once-each-sign in {word}")
    if len(word) != 2 * n_letters:
        raise SchemaError(f"{where}: bad length {len(word)} for {n_letters} letters")


def _collect_handle(word: Word, final_ids: set[int], fresh: list[int],
                    subst: dict[int, Word]) -> Word:
    """One normalization round: collect a linked pair into a leading
    commutator block (four cut-and-glue moves, substitutions recorded)."""

    def set_subst(occ: int, definition: Word) -> None:
        if occ > 0:
            subst[occ] = definition
        else:
            subst[-occ] = inv_word(definition)

    def new_letter() -> int:
        fresh[0] += 1
        return fresh[0]

    # pick the first occurrence of an uncollected letter
    x_pos = next(i for i, v in enumerate(word) if abs(v) not in final_ids)
    w = word[x_pos:] + word[:x_pos]
    x = w[0]
    px = w.index(-x)
    y = None
    for j in range(1, px):
        if w.index(-w[j]) > px:
            y = w[j]
            py = w.index(-y)
            w2, w3, w4, w5 = w[1:j], w[j + 1: px], w[px + 1: py], w[py + 1:]
            break
    if y is None:
        raise SchemaError(f"no linked partner for {x} in {w}")

    c, d, e, f = new_letter(), new_letter(), new_letter(), new_letter()
    M = w2 + w5
    N = w4 + w3
    # cut head(x)->head(x^-1), glue along y
    set_subst(y, w5 + (x, c) + w4)
    # same cut on (c, x), glue along x
    set_subst(x, inv_word(M) + (-d, -c))
    # shrink the gap: eliminate c
    set_subst(c, (e, -d))
    # finish: eliminate d, block (f, e^-1) leads
    set_subst(d, inv_word(M) + (-e, f, e))
    final_ids.update((e, f))
    return (f, -e, -f, e) + M + N


def _build_schema(m: CombMap) -> Schema:
    surf = surface(m)
    g = surf.genus
    n = m.n_darts
    if g > MAX_SCHEMA_GENUS:
        raise ValueError(f"schema supports genus <= {MAX_SCHEMA_GENUS}, got {g}")

    # stage 1: chord symbols (1-based), tree darts silent
    def dart_sym(di: int) -> Word:
        dc = surf.dart_chord[di]
        if dc is None:
            return ()
        j, s = dc
        return (s * (j + 1),)

    stage1 = [dart_sym(di) for di in range(n)]
    if g == 0:
        return Schema(0, (), [()] * n)

    face_words: list[Word] = []
    for cyc in surf.faces:
        parts: list[int] = []
        for dd in cyc:
            parts.extend(stage1[dd - 1])
        face_words.append(tuple(parts))

    # stage 2: spanning cotree of the dual over chord edges, glue leaves in
    n_faces = len(surf.faces)
    face_of_dart = [0] * n
    for fi, cyc in enumerate(surf.faces):
        for dd in cyc:
            face_of_dart[dd - 1] = fi
    chord_sides: dict[int, tuple[int, int]] = {}
    for di in range(n):
        dc = surf.dart_chord[di]
        if dc is not None and dc[1] == 1:
            rep = di + 1
            chord_sides[dc[0] + 1] = (face_of_dart[rep - 1],
                                      face_of_dart[m.alpha_of(rep) - 1])
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_faces)]
    for sym, (fa, fb) in chord_sides.items():
        if fa != fb:
            adj[fa].append((fb, sym))
            adj[fb].append((fa, sym))
    parent: list[tuple[int, int] | None] = [None] * n_faces
    seen = [False] * n_faces
    seen[0] = True
    order = [0]
    head = 0
    while head < len(order):
        fcur = order[head]
        head += 1
        for fb, sym in adj[fcur]:
            if not seen[fb]:
                seen[fb] = True
                parent[fb] = (fcur, sym)
                order.append(fb)
    if not all(seen):
        raise SchemaError("dual graph not spanned by chords")

    subst: dict[int, Word] = {}
    comp = list(range(n_faces))

    def find(a: int) -> int:
        while comp[a] != a:
            comp[a] = comp[comp[a]]
            a = comp[a]
        return a

    live = {fi: w for fi, w in enumerate(face_words)}
    for fi in reversed(order[1:]):
        fpar, sym = parent[fi]
        ra, rb = find(fi), find(fpar)
        wa, wb = live.pop(ra), live.pop(rb)
        if sym not in wa:
            wa, wb = wb, wa
            ra, rb = rb, ra
        # record sym from the disk it bounds, then glue the two faces
        ia = wa.index(sym)
        set_def = inv_word(wa[ia + 1:] + wa[:ia])
        subst[sym] = set_def
        merged = _glue_words(wa, wb, sym)
        comp[ra] = rb
        live[rb] = merged

    (polygon,) = live.values()
    _check_polygon(polygon, 2 * g, "polygon")

    # stage 3: handle normalization
    fresh = [len(chord_sides) + surf.n_chords + 1]  # ids above every chord symbol
    final_ids: set[int] = set()
    word = polygon
    for _ in range(g):
        word = _collect_handle(word, final_ids, fresh, subst)
        _check_polygon(word, 2 * g, "normalization")
    leftovers = {abs(v) for v in word} - final_ids
    if leftovers:
        raise SchemaError(f"letters {leftovers} never collected")

    # parse into blocks, rename to canonical a_i, b_i (= 2i-1, 2i)
    rename: dict[int, int] = {}
    parsed = None
    for r in range(4):
        wr = word[r:] + word[:r]
        ok = all(wr[4 * j + 2] == -wr[4 * j] and wr[4 * j + 3] == -wr[4 * j + 1]
                 for j in range(g))
        if ok:
            parsed = wr
            break
    if parsed is None:
        raise SchemaError(f"final word is not a block concatenation: {word}")
    for j in range(g):
        p, q = parsed[4 * j], parsed[4 * j + 1]
        rename[abs(p)] = (2 * j + 1) if p > 0 else -(2 * j + 1)
        rename[abs(q)] = (2 * j + 2) if q > 0 else -(2 * j + 2)

    memo: dict[int, Word] = {}

    def expand(sym: int) -> Word:
        got = memo.get(sym)
        if got is not None:
            return got
        if sym in rename:
            out: Word = (rename[sym],)
        else:
            parts: list[int] = []
            for v in subst[sym]:
                ew = expand(abs(v))
                parts.extend(ew if v > 0 else inv_word(ew))
            out = free_reduce(parts)
        memo[sym] = out
        return out

    dart_words = []
    for di in range(n):
        parts = []
        for v in stage1[di]:
            ew = expand(abs(v))
            parts.extend(ew if v > 0 else inv_word(ew))
        dart_words.append(free_reduce(parts))

    relator = tuple(x for j in range(g)
                    for x in (2 * j + 1, 2 * j + 2, -(2 * j + 1), -(2 * j + 2)))
    return Schema(g, relator, dart_words)


@lru_cache(maxsize=2048)
def schema(m: CombMap) -> Schema:
    """Canonical relator plus the word of every dart in a1,b1,..,ag,bg."""
    return _build_schema(m)


# -- the homotopy predicates ----------------------------------------------------


def walk_word(m: CombMap, darts: Sequence[int]) -> str:
    return schema(m).walk_word(darts)


def is_contractible(m: CombMap, w) -> bool:
    """Null-homotopy of a closed walk.

    Genus 0: always true.  Genus 1: homology decides (abelian group).
    Genus >= 2: Dehn's algorithm on the canonical one-relator
    presentation.
    """
    w = check_closed_walk(m, w)
    surf = surface(m)
    if surf.genus == 0:
        return True
    if surf.genus == 1:
        return all(x == 0 for x in surf.walk_class(w.darts))
    sch = schema(m)
    return sch.is_trivial(sch.walk_word(w.darts))


def are_freely_homotopic(m: CombMap, w1, w2) -> bool:
    """Free homotopy of closed walks (basepoints unrelated)."""
    w1 = check_closed_walk(m, w1)
    w2 = check_closed_walk(m, w2)
    surf = surface(m)
    if surf.genus == 0:
        return True
    if surf.genus == 1:
        return surf.walk_class(w1.darts) == surf.walk_class(w2.darts)
    sch = schema(m)
    s1 = sch.walk_word(w1.darts)
    s2 = sch.walk_word(w2.darts)
    r1 = sch.dehn_cyclic_reduce(s1)
    r2 = sch.dehn_cyclic_reduce(s2)
    if len(r1) != len(r2):
        return False
    if _min_rotation(r1) == _min_rotation(r2):
        return True
    return bool(sch.conjugacy_set(r1) & sch.conjugacy_set(r2))
