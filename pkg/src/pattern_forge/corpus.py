"""Named permutation classes and Robinson-Schensted shapes.

Each class is defined by a direct computation (a sorting simulation, pattern
avoidance or a tableau-shape test) and is used as input for basis mining.
"""

from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable

from .errors import ResourceLimitError, UnknownClassError
from .patterns import MarkedMeshPattern, MeshPattern, avoids_all, mask_from_squares
from .perm import all_perms_upto
from .sorters import quicksort_pass, stack_sort, west_sortable

DEFAULT_MAX_N = 9


# --------------------------------------------------------------------------
# RSK shapes
# --------------------------------------------------------------------------

def rsk_shape(perm):
    """Shape of the insertion tableau under Schensted row insertion."""
    rows = []
    for v in perm:
        for row in rows:
            i = bisect_left(row, v)
            if i == len(row):
                row.append(v)
                break
            row[i], v = v, row[i]
        else:
            rows.append([v])
    return tuple(len(r) for r in rows)


def longest_increasing(perm):
    """Length of a longest increasing subsequence (patience sorting)."""
    tails = []
    for v in perm:
        i = bisect_left(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


def shape_contains(outer, inner):
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


def is_hook(shape):
    return not shape_contains(shape, (2, 2))


# --------------------------------------------------------------------------
# patterns used by the classes
# --------------------------------------------------------------------------

def _mesh(p, squares=()):
    return MeshPattern.from_squares(p, squares)


SIMSUN_BASIS = (_mesh((3, 2, 1), [(1, 0), (1, 1), (2, 2)]),)
SMOOTH_BASIS = (_mesh((1, 3, 2, 4)), _mesh((2, 1, 4, 3)))
FOREST_LIKE_BASIS = (_mesh((1, 3, 2, 4)), _mesh((2, 1, 4, 3), [(2, 2)]))
HOOK_BASIS = (_mesh((2, 1, 4, 3)), _mesh((3, 4, 1, 2)),
              _mesh((3, 1, 4, 2), [(2, 2)]), _mesh((2, 4, 1, 3), [(2, 2)]))
QUICKSORT_BASIS = (_mesh((3, 2, 1)), _mesh((2, 4, 1, 3)), _mesh((2, 1, 4, 3), [(2, 2)]))


def _marked(p, shaded, *marks):
    k = len(p)
    base = _mesh(p, shaded)
    return MarkedMeshPattern(base, [(mask_from_squares(k, sq), 1) for sq in marks])


# Marked mesh patterns offered as a description of the permutations whose
# shape does not contain (3, 2); each mark needs at least one point.
SHAPE32_MARKED = (
    _marked((2, 1, 4, 3), [], [(0, 0)], [(4, 4)]),
    _marked((3, 4, 1, 2), [], [(1, 3)], [(3, 1)]),
    _marked((3, 1, 4, 2), [(2, 2)], [(0, 0), (1, 0)], [(3, 4), (4, 4)]),
    _marked((2, 4, 1, 3), [(2, 2)], [(0, 0), (0, 1)], [(4, 3), (4, 4)]),
)


# --------------------------------------------------------------------------
# named classes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class NamedClass:
    name: str
    membership: Callable
    citation: str

    def __contains__(self, perm):
        return self.membership(perm)


def _stack_sortable(p):
    return stack_sort(p) == tuple(sorted(p))


def _quicksortable(p):
    return quicksort_pass(p) == tuple(sorted(p))


CLASSES = {c.name: c for c in [
    NamedClass("stack_sortable", _stack_sortable, "one pass of a stack sorts it"),
    NamedClass("west_2", lambda p: west_sortable(p, 2), "two stack passes sort it"),
    NamedClass("west_3", lambda p: west_sortable(p, 3), "three stack passes sort it"),
    NamedClass("simsun_basis_class", lambda p: avoids_all(p, SIMSUN_BASIS),
               "avoiders of the simsun mesh pattern"),
    NamedClass("smooth", lambda p: avoids_all(p, SMOOTH_BASIS), "Av(1324, 2143)"),
    NamedClass("forest_like_basis_class", lambda p: avoids_all(p, FOREST_LIKE_BASIS),
               "Av(1324, (2143, {(2,2)}))"),
    NamedClass("hook_rsk", lambda p: is_hook(rsk_shape(p)), "RSK shape is a hook"),
    NamedClass("shape32_avoiding_rsk", lambda p: not shape_contains(rsk_shape(p), (3, 2)),
               "RSK shape does not contain (3,2)"),
    NamedClass("quicksort_1pass", _quicksortable, "one quicksort pass sorts it"),
]}


def get_class(name):
    try:
        return CLASSES[name]
    except KeyError:
        raise UnknownClassError(
            f"unknown class {name!r}; choose from {', '.join(sorted(CLASSES))}") from None


def named_class(name, n, max_n=DEFAULT_MAX_N):
    """Members of length at most ``n``, by increasing length then lexicographically."""
    cls = get_class(name)
    if n > max_n:
        raise ResourceLimitError(f"n = {n} exceeds the class guard {max_n}")
    return [p for p in all_perms_upto(n) if cls.membership(p)]


def class_names():
    return sorted(CLASSES)


__all__ = [
    "rsk_shape", "longest_increasing", "shape_contains", "is_hook", "NamedClass", "CLASSES",
    "get_class", "named_class", "class_names", "SIMSUN_BASIS", "SMOOTH_BASIS",
    "FOREST_LIKE_BASIS", "HOOK_BASIS", "QUICKSORT_BASIS", "SHAPE32_MARKED",
]
