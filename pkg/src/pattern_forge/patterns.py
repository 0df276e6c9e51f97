"""Classical, mesh, marked-mesh and decorated patterns and their containment.

Grid conventions
----------------
A pattern of length k lives on a (k+1) x (k+1) grid of open squares.  Square
``(c, r)`` lies between pattern positions c and c+1 and between pattern values
r and r+1; index 0 means "before/below everything" and k "after/above
everything".  Pattern point t (1-based) with value u sits on the lattice
vertex ``(t, u)``.

Sets of squares (shadings and regions) are stored as int bitmasks, bit
``c * (k + 1) + r``.  Subset tests are then single mask operations.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

from .errors import InvalidOccurrenceError
from .perm import Perm, flatten


# --------------------------------------------------------------------------
# grid helpers
# --------------------------------------------------------------------------

def bit(k, c, r):
    return 1 << (c * (k + 1) + r)


def full_mask(k):
    return (1 << ((k + 1) * (k + 1))) - 1


def mask_from_squares(k, squares):
    mask = 0
    for c, r in squares:
        if not (0 <= c <= k and 0 <= r <= k):
            raise ValueError(f"square {(c, r)} outside the grid of a length-{k} pattern")
        mask |= bit(k, c, r)
    return mask


def squares_of(k, mask):
    """Sorted list of the ``(c, r)`` squares in ``mask``."""
    w = k + 1
    out = []
    while mask:
        low = mask & -mask
        b = low.bit_length() - 1
        out.append(divmod(b, w))
        mask ^= low
    return sorted(out)


def rect_mask(k, c1, c2, r1, r2):
    """Mask of the rectangle of squares with columns c1..c2 and rows r1..r2."""
    mask = 0
    for c in range(c1, c2 + 1):
        for r in range(r1, r2 + 1):
            mask |= bit(k, c, r)
    return mask


def popcount(x):
    return bin(x).count("1")


def _vertex_inside(k, mask, t, u):
    # vertex (t, u) is interior to a region iff its four neighbouring squares are in it
    w = k + 1
    base = (t - 1) * w + (u - 1)
    need = (1 << base) | (1 << (base + 1)) | (1 << (base + w)) | (1 << (base + w + 1))
    return mask & need == need


# --------------------------------------------------------------------------
# pattern types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MeshPattern:
    pattern: Perm
    shading: int = 0

    def __post_init__(self):
        if not isinstance(self.pattern, Perm):
            object.__setattr__(self, "pattern", Perm(self.pattern))
        if self.shading & ~full_mask(len(self.pattern)):
            raise ValueError("shading outside the pattern grid")

    @classmethod
    def from_squares(cls, pattern, squares=()):
        pattern = Perm(pattern)
        return cls(pattern, mask_from_squares(len(pattern), squares))

    @property
    def k(self):
        return len(self.pattern)

    @property
    def squares(self):
        return squares_of(self.k, self.shading)

    def is_classical(self):
        return self.shading == 0

    def sort_key(self):
        return (self.k, tuple(self.pattern), self.shading)

    def __str__(self):
        from .notation import format_pattern
        return format_pattern(self)


@dataclass(frozen=True)
class MarkedMeshPattern:
    """A mesh pattern plus regions that must hold at least ``min_count`` points.

    ``marks`` is a frozenset of ``(region_mask, min_count)`` pairs.
    """

    base: MeshPattern
    marks: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "marks", frozenset(self.marks))
        for region, count in self.marks:
            if region & self.base.shading:
                raise ValueError("mark region overlaps the shading")
            if count < 0:
                raise ValueError("negative mark count")

    @property
    def pattern(self):
        return self.base.pattern

    @property
    def shading(self):
        return self.base.shading

    @property
    def k(self):
        return self.base.k

    def sort_key(self):
        return (self.k, tuple(self.pattern), self.shading, sorted(self.marks))

    def __str__(self):
        from .notation import format_pattern
        return format_pattern(self)


@dataclass(frozen=True)
class DecoratedPattern:
    """The 5-tuple (pattern, shading, markings, avoidance and containment decorations).

    Markings are ``(region_mask, min_count)`` pairs.  Decorations are
    ``(region_mask, MeshPattern)`` pairs: the points of the permutation inside
    the region, read left to right, must avoid (``avoid``) or contain
    (``contain``) the decoration pattern.  The decoration's own shading is
    evaluated on those points only.
    """

    pattern: Perm
    shading: int = 0
    marks: frozenset = field(default_factory=frozenset)
    avoid: frozenset = field(default_factory=frozenset)
    contain: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.pattern, Perm):
            object.__setattr__(self, "pattern", Perm(self.pattern))
        for name in ("marks", "avoid", "contain"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @property
    def k(self):
        return len(self.pattern)

    def sort_key(self):
        dec = lambda ds: sorted((r, q.sort_key()) for r, q in ds)  # noqa: E731
        return (self.k, tuple(self.pattern), self.shading, sorted(self.marks),
                dec(self.avoid), dec(self.contain))

    def __str__(self):
        from .notation import format_pattern
        return format_pattern(self)


def as_decorated(patt):
    """Lift a classical, mesh or marked pattern to a :class:`DecoratedPattern`."""
    if isinstance(patt, DecoratedPattern):
        return patt
    if isinstance(patt, MarkedMeshPattern):
        return DecoratedPattern(patt.pattern, patt.shading, patt.marks)
    if isinstance(patt, MeshPattern):
        return DecoratedPattern(patt.pattern, patt.shading)
    return DecoratedPattern(Perm(patt))


def as_mesh(patt):
    if isinstance(patt, MeshPattern):
        return patt
    return MeshPattern(Perm(patt))


# --------------------------------------------------------------------------
# classical occurrences
# --------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _constraints(patt):
    # for step t: indices of the previously placed entries that bound p[t] from below / above
    out = []
    for t, v in enumerate(patt):
        lo = hi = -1
        for s in range(t):
            if patt[s] < v and (lo < 0 or patt[s] > patt[lo]):
                lo = s
            if patt[s] > v and (hi < 0 or patt[s] < patt[hi]):
                hi = s
        out.append((lo, hi))
    return tuple(out)


def occurrences(perm, patt):
    """Yield every 0-based index tuple of ``perm`` whose flattening is ``patt``."""
    k, n = len(patt), len(perm)
    if k == 0:
        yield ()
        return
    if k > n:
        return
    cons = _constraints(tuple(patt))
    idx = [0] * k
    vals = [0] * k

    def rec(t, start):
        lo, hi = cons[t]
        lov = vals[lo] if lo >= 0 else 0
        hiv = vals[hi] if hi >= 0 else n + 1
        last = t == k - 1
        for i in range(start, n - k + t + 1):
            v = perm[i]
            if lov < v < hiv:
                idx[t] = i
                vals[t] = v
                if last:
                    yield tuple(idx)
                else:
                    yield from rec(t + 1, i + 1)

    yield from rec(0, 0)


def occurrences_classical(perm, patt):
    return set(occurrences(perm, patt))


def contains_classical(perm, patt):
    """Fast boolean classical containment (backtracking with value windows)."""
    k, n = len(patt), len(perm)
    if k == 0:
        return True
    if k > n:
        return False
    cons = _constraints(tuple(patt))
    vals = [0] * k

    def rec(t, start):
        lo, hi = cons[t]
        lov = vals[lo] if lo >= 0 else 0
        hiv = vals[hi] if hi >= 0 else n + 1
        for i in range(start, n - k + t + 1):
            v = perm[i]
            if lov < v < hiv:
                if t == k - 1:
                    return True
                vals[t] = v
                if rec(t + 1, i + 1):
                    return True
        return False

    return rec(0, 0)


def contains_classical_brute(perm, patt):
    """Independent reference: try every index subset and flatten it."""
    target = tuple(patt)
    return any(tuple(flatten([perm[i] for i in c])) == target
               for c in combinations(range(len(perm)), len(patt)))


# --------------------------------------------------------------------------
# point locations relative to an occurrence
# --------------------------------------------------------------------------

def _locate(perm, occ):
    """Column and row of every entry of ``perm`` relative to ``occ``.

    Returns ``(cols, rows)`` lists indexed by position: for entries outside the
    occurrence these are their square coordinates; for occurrence entries they
    are the vertex coordinates (t, u), 1-based.
    """
    n, k = len(perm), len(occ)
    cols = [0] * n
    c = j = 0
    for i in range(n):
        if j < k and occ[j] == i:
            c += 1
            j += 1
        cols[i] = c
    occvals = sorted(perm[i] for i in occ)
    rank = [0] * (n + 2)
    r = j = 0
    for v in range(1, n + 1):
        if j < k and occvals[j] == v:
            r += 1
            j += 1
        rank[v] = r
    rows = [rank[v] for v in perm]
    return cols, rows


def occupied_mask(perm, occ):
    """Mask of the squares (relative to ``occ``) that hold some other entry of ``perm``."""
    k = len(occ)
    w = k + 1
    cols, rows = _locate(perm, occ)
    inocc = set(occ)
    mask = 0
    for i in range(len(perm)):
        if i not in inocc:
            mask |= 1 << (cols[i] * w + rows[i])
    return mask


def maximal_shading(patt, perm, occ):
    """Largest shading of ``patt`` for which ``occ`` is still an occurrence in ``perm``."""
    occ = tuple(occ)
    if len(occ) != len(patt) or list(occ) != sorted(set(occ)) or \
            (occ and not 0 <= occ[0] <= occ[-1] < len(perm)) or \
            tuple(flatten([perm[i] for i in occ])) != tuple(patt):
        raise InvalidOccurrenceError(f"{occ!r} is not an occurrence of {patt} in {perm}")
    return full_mask(len(patt)) & ~occupied_mask(perm, occ)


def _region_points(perm, occ, cols, rows, inocc, k, region):
    pts = []
    for i in range(len(perm)):
        if i in inocc:
            if _vertex_inside(k, region, cols[i], rows[i]):
                pts.append(perm[i])
        elif (region >> (cols[i] * (k + 1) + rows[i])) & 1:
            pts.append(perm[i])
    return pts


# --------------------------------------------------------------------------
# containment
# --------------------------------------------------------------------------

def contains_mesh(perm, mp):
    mp = as_mesh(mp)
    patt, shading = mp.pattern, mp.shading
    if shading == 0:
        return contains_classical(perm, patt)
    for occ in occurrences(perm, patt):
        if not occupied_mask(perm, occ) & shading:
            return True
    return False


def _satisfies_decorations(perm, occ, k, marks, avoid, contain):
    cols, rows = _locate(perm, occ)
    inocc = set(occ)
    for region, count in marks:
        if count and len(_region_points(perm, occ, cols, rows, inocc, k, region)) < count:
            return False
    for region, q in avoid:
        word = _region_points(perm, occ, cols, rows, inocc, k, region)
        if len(word) >= q.k and contains_mesh(flatten(word), q):
            return False
    for region, q in contain:
        word = _region_points(perm, occ, cols, rows, inocc, k, region)
        if len(word) < q.k or not contains_mesh(flatten(word), q):
            return False
    return True


def contains_decorated(perm, dp):
    dp = as_decorated(dp)
    k = dp.k
    plain = not (dp.marks or dp.avoid or dp.contain)
    for occ in occurrences(perm, dp.pattern):
        if dp.shading and occupied_mask(perm, occ) & dp.shading:
            continue
        if plain or _satisfies_decorations(perm, occ, k, dp.marks, dp.avoid, dp.contain):
            return True
    return False


def contains_marked(perm, mmp):
    return contains_decorated(perm, as_decorated(mmp))


def contains(perm, patt):
    """Containment for any supported pattern kind."""
    if isinstance(patt, MeshPattern):
        return contains_mesh(perm, patt)
    if isinstance(patt, (MarkedMeshPattern, DecoratedPattern)):
        return contains_decorated(perm, patt)
    return contains_classical(perm, patt)


def avoids_all(perm, basis):
    return not any(contains(perm, b) for b in basis)


# --------------------------------------------------------------------------
# shading families and the lattice utilities used by mining
# --------------------------------------------------------------------------

class ShadingFamily:
    """Antichain (under inclusion) of shadings of one classical pattern."""

    def __init__(self, pattern, shadings=()):
        self.pattern = Perm(pattern)
        self._members = set()
        for s in shadings:
            self.add(s)

    @property
    def k(self):
        return len(self.pattern)

    @property
    def shadings(self):
        return frozenset(self._members)

    def __len__(self):
        return len(self._members)

    def __iter__(self):
        return iter(sorted(self._members))

    def __contains__(self, mask):
        return mask in self._members

    def __eq__(self, other):
        return isinstance(other, ShadingFamily) and self.pattern == other.pattern \
            and self._members == other._members

    def __repr__(self):
        return f"ShadingFamily({self.pattern}, {[squares_of(self.k, s) for s in self]})"

    def dominated(self, mask):
        return any(mask & ~t == 0 for t in self._members)

    def add(self, mask):
        """Insert ``mask`` unless it is contained in a member; drop members it contains."""
        if mask in self._members or self.dominated(mask):
            return False
        self._members = {t for t in self._members if t & ~mask} | {mask}
        return True

    def merge(self, other):
        for s in other._members:
            self.add(s)
        return self


def minimal_transversals(edges):
    """Minimal hitting sets of a family of bitmask edges (Berge's incremental method)."""
    edges = sorted(set(edges), key=lambda e: (popcount(e), e))
    if any(e == 0 for e in edges):
        return []
    trans = [0]
    for e in edges:
        new = set()
        for h in trans:
            if h & e:
                new.add(h)
            else:
                b = e
                while b:
                    low = b & -b
                    new.add(h | low)
                    b ^= low
        trans = _minimal_elements(new)
    return sorted(trans)


def _minimal_elements(sets):
    kept = []
    for h in sorted(sets, key=lambda x: (popcount(x), x)):
        if not any(g & ~h == 0 for g in kept):
            kept.append(h)
    return kept


def minimal_blockers(family):
    """Inclusion-minimal shadings not contained in any member of ``family``."""
    full = full_mask(family.k)
    return ShadingFamily(family.pattern,
                         minimal_transversals(full & ~t for t in family.shadings))


def _value_order(perm, occ):
    return sorted(perm[i] for i in occ)


def shading_consequence(p, R, q, Rq):
    """Structural test that every permutation containing (p, R) contains (q, Rq).

    Looks for an occurrence of q inside p such that every shaded square of q
    maps onto a block of p-squares that are all shaded in R and hold no point
    of p.
    """
    p, q = tuple(p), tuple(q)
    k, j = len(p), len(q)
    if j > k:
        return False
    q_squares = squares_of(j, Rq)
    for occ in occurrences(p, q):
        pos = [-1] + list(occ) + [k]          # 0-based positions, sentinels
        vals = [0] + _value_order(p, occ) + [k + 1]
        ok = True
        for a, b in q_squares:
            lo_pos, hi_pos = pos[a], pos[a + 1]
            lo_val, hi_val = vals[b], vals[b + 1]
            # any point of p strictly inside the block breaks the mapping
            if any(lo_val < p[i] < hi_val for i in range(lo_pos + 1, hi_pos)):
                ok = False
                break
            # p-columns between the bounding points, p-rows between the bounding values
            block = rect_mask(k, lo_pos + 1, hi_pos, lo_val, hi_val - 1)
            if block & ~R:
                ok = False
                break
        if ok:
            return True
    return False


# --------------------------------------------------------------------------
# marked patterns: classical expansion
# --------------------------------------------------------------------------

def expand_marked(mmp):
    """Mesh patterns equivalent (as a set) to a marked mesh pattern.

    Each mark is replaced by exactly ``min_count`` new points placed in its
    squares in every possible relative order; the base shading is carried over
    to the blocks it covers.  Marks must be pairwise disjoint and contain no
    base point.
    """
    k = mmp.k
    marks = sorted(mmp.marks)
    seen = 0
    for region, _ in marks:
        if region & seen:
            raise ValueError("expansion needs pairwise disjoint marks")
        seen |= region
        for t, u in enumerate(mmp.pattern, 1):
            if _vertex_inside(k, region, t, u):
                raise ValueError("expansion needs marks free of pattern points")
    choices = []
    for region, count in marks:
        sq = squares_of(k, region)
        choices.append(list(_multisets(sq, count)))

    out = set()

    def place(i, extra):
        if i == len(choices):
            out.update(_realise(mmp.pattern, mmp.shading, extra))
            return
        for combo in choices[i]:
            place(i + 1, extra + list(combo))

    place(0, [])
    return sorted(out, key=MeshPattern.sort_key)


def _multisets(items, size):
    if size == 0:
        yield ()
        return
    for i, x in enumerate(items):
        for rest in _multisets(items[i:], size - 1):
            yield (x,) + rest


def _realise(pattern, shading, extra):
    """All mesh patterns obtained by inserting points into the listed squares.

    Points sharing a column may come in any left-to-right order, and points
    sharing a row in any bottom-to-top order.
    """
    cols, rows = {}, {}
    for i, (c, r) in enumerate(extra):
        cols.setdefault(c, []).append(i)
        rows.setdefault(r, []).append(i)
    col_groups = [cols[c] for c in sorted(cols)]
    row_groups = [rows[r] for r in sorted(rows)]

    def orders(groups):
        if not groups:
            yield []
            return
        for first in permutations(groups[0]):
            for rest in orders(groups[1:]):
                yield [first] + rest

    base = [(float(t), float(u)) for t, u in enumerate(pattern, 1)]
    for xo in orders(col_groups):
        xs = {}
        for group in xo:
            for s, i in enumerate(group):
                xs[i] = extra[i][0] + (s + 1) / (len(group) + 1)
        for yo in orders(row_groups):
            ys = {}
            for group in yo:
                for s, i in enumerate(group):
                    ys[i] = extra[i][1] + (s + 1) / (len(group) + 1)
            pts = sorted(base + [(xs[i], ys[i]) for i in range(len(extra))])
            new = flatten([y for _, y in pts])
            yield MeshPattern(new, _lift_shading(pattern, shading, pts, new))


def _lift_shading(pattern, shading, pts, new):
    # each square of the expanded grid lies inside exactly one base square
    if not shading:
        return 0
    k, K = len(pattern), len(new)
    xs = [p[0] for p in pts]
    ys = sorted(p[1] for p in pts)

    def base_index(coords, i):
        lo = coords[i - 1] if i else coords[0] - 1
        hi = coords[i] if i < K else coords[-1] + 1
        return min(max(int((lo + hi) / 2), 0), k)

    mask = 0
    for C in range(K + 1):
        c = base_index(xs, C)
        for Rr in range(K + 1):
            if (shading >> (c * (k + 1) + base_index(ys, Rr))) & 1:
                mask |= bit(K, C, Rr)
    return mask
