"""Permutations in one-line notation and the elementary operations on them.

A permutation of length n is stored as a tuple holding a rearrangement of
1..n.  :class:`Perm` subclasses ``tuple`` so permutations hash, compare and
slice like tuples; slicing returns plain tuples (words), which is what the
recursive algorithms elsewhere in the package want.
"""

from itertools import combinations, permutations
from math import comb

from .errors import InvalidPermutationError, InvalidWordError


class Perm(tuple):
    """An immutable permutation of ``1..n``."""

    __slots__ = ()

    def __new__(cls, values=()):
        values = tuple(values)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise InvalidPermutationError(f"not a permutation of 1..{len(values)}: {values!r}")
        return tuple.__new__(cls, values)

    @classmethod
    def _trusted(cls, values):
        # skips validation; callers guarantee a rearrangement of 1..n
        return tuple.__new__(cls, values)

    @classmethod
    def identity(cls, n):
        return cls._trusted(range(1, n + 1))

    @classmethod
    def decreasing(cls, n):
        return cls._trusted(range(n, 0, -1))

    def __repr__(self):
        return f"Perm({to_string(self)})"

    def __str__(self):
        return to_string(self)

    def reverse(self):
        return reverse(self)

    def complement(self):
        return complement(self)

    def inverse(self):
        return inverse(self)

    def inversions(self):
        return inversions(self)

    def is_identity(self):
        return is_identity(self)


def to_string(perm):
    """One-line string: digits when every value is below 10, else space separated."""
    if len(perm) <= 9:
        return "".join(map(str, perm))
    return " ".join(map(str, perm))


def flatten(word):
    """Replace the i-th smallest letter of ``word`` by i.

    >>> flatten((2, 4, 3))
    Perm(132)
    """
    word = tuple(word)
    ranks = {v: i for i, v in enumerate(sorted(word), 1)}
    if len(ranks) != len(word):
        raise InvalidWordError(f"word has repeated letters: {word!r}")
    return Perm._trusted(tuple(ranks[v] for v in word))


def subwords_leq(perm, m):
    """All subsequences of length 1..m together with their index tuples (0-based).

    Returned as a list of ``(word, indices)`` pairs, shortest first.
    """
    out = []
    for k in range(1, min(m, len(perm)) + 1):
        for idx in combinations(range(len(perm)), k):
            out.append((tuple(perm[i] for i in idx), idx))
    return out


def count_subwords_leq(n, m):
    return sum(comb(n, k) for k in range(1, min(m, n) + 1))


def inversions(perm):
    """Value pairs ``(a, b)`` with ``a > b`` and ``a`` to the left of ``b``."""
    out = set()
    for i, a in enumerate(perm):
        for b in perm[i + 1:]:
            if a > b:
                out.add((a, b))
    return frozenset(out)


def reverse(perm):
    return Perm._trusted(tuple(reversed(perm)))


def complement(perm):
    n = len(perm)
    return Perm._trusted(tuple(n + 1 - v for v in perm))


def inverse(perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm, 1):
        inv[v - 1] = i
    return Perm._trusted(tuple(inv))


def is_identity(perm):
    return all(v == i for i, v in enumerate(perm, 1))


def all_perms(n):
    """Every permutation of length n in lexicographic order."""
    for p in permutations(range(1, n + 1)):
        yield Perm._trusted(p)


def all_perms_upto(n, start=0):
    for k in range(start, n + 1):
        yield from all_perms(k)
