"""Mining allowed mesh patterns from a set of permutations and inferring a basis.

``mine`` records, for every classical pattern p of length at most m, the
antichain of maximal shadings of p that occur in the input.  ``forb`` turns
those into minimal forbidden shadings and drops ones implied by forbidden
patterns of shorter length.  ``bisc`` is their composition.
"""

import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import chain, combinations

from .errors import ResourceLimitError
from .patterns import (DecoratedPattern, MarkedMeshPattern, MeshPattern, ShadingFamily,
                       _locate, avoids_all, contains_classical, full_mask, minimal_blockers,
                       shading_consequence)
from .perm import Perm, all_perms, flatten

log = logging.getLogger(__name__)

DEFAULT_MAX_N = 10


def _pattern_key(p):
    return (len(p), tuple(p))


def all_patterns_upto(m):
    return [p for k in range(1, m + 1) for p in all_perms(k)]


def _mine_chunk(perms, m):
    """Per-pattern sets of occupied-square masks seen in ``perms``.

    Returns the antichain of maximal shadings for each pattern touched.
    """
    families = {}
    seen = {}
    flat_cache = {}
    for perm in perms:
        n = len(perm)
        for k in range(1, min(m, n) + 1):
            full = full_mask(k)
            w = k + 1
            for idx in combinations(range(n), k):
                word = tuple(perm[i] for i in idx)
                p = flat_cache.get(word)
                if p is None:
                    p = flat_cache[word] = flatten(word)
                cols, rows = _locate(perm, idx)
                occ = 0
                j = 0
                for i in range(n):
                    if j < k and idx[j] == i:
                        j += 1
                        continue
                    occ |= 1 << (cols[i] * w + rows[i])
                shading = full & ~occ
                s = seen.setdefault(p, set())
                if shading in s:
                    continue
                s.add(shading)
                fam = families.get(p)
                if fam is None:
                    fam = families[p] = ShadingFamily(p)
                fam.add(shading)
    return families


def mine(perms, m, workers=1):
    """Maximal allowed shadings of every classical pattern of length at most ``m``.

    Returns a dict mapping each pattern (by increasing length, then
    lexicographically) to its :class:`ShadingFamily`.  With ``workers > 1`` the
    input is split across processes; the merged result is identical to the
    sequential one.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    perms = sorted({Perm(p) for p in perms}, key=_pattern_key)
    if workers > 1 and len(perms) > 1:
        chunks = [perms[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_mine_chunk, chunks, [m] * len(chunks)))
    else:
        parts = [_mine_chunk(perms, m)]
    result = {p: ShadingFamily(p) for p in all_patterns_upto(m)}
    for part in parts:
        for p, fam in part.items():
            result[p].merge(fam)
    return result


def forb(mined):
    """Minimal forbidden shadings per pattern, pruned of structural consequences."""
    result = {}
    for p in sorted(mined, key=_pattern_key):
        blockers = minimal_blockers(mined[p])
        kept = []
        for R in sorted(blockers.shadings):
            implied = any(
                shading_consequence(p, R, q, Rq)
                for q, fq in result.items() if len(q) < len(p)
                for Rq in fq
            )
            if not implied:
                kept.append(R)
        result[p] = kept
    return result


def bisc(perms, m, workers=1):
    """Conjectured mesh-pattern basis for ``perms``, sorted by length then pattern."""
    forbidden = forb(mine(perms, m, workers=workers))
    out = [MeshPattern(p, R) for p, shadings in forbidden.items() for R in shadings]
    return sorted(out, key=MeshPattern.sort_key)


# --------------------------------------------------------------------------
# avoidance classes
# --------------------------------------------------------------------------

def _is_classical(patt):
    if isinstance(patt, MeshPattern):
        return patt.shading == 0
    if isinstance(patt, (MarkedMeshPattern, DecoratedPattern)):
        return False
    return True


_CLASS_CACHE = {}


def _classical_class(basis, n):
    """Members of length n of the pattern-closed class Av(basis), grown by inserting the maximum."""
    key = tuple(sorted(basis, key=_pattern_key))
    levels = _CLASS_CACHE.setdefault(key, [[Perm(())]])
    while len(levels) <= n:
        size = len(levels)
        nxt = []
        for sigma in levels[-1]:
            for i in range(size):
                tau = Perm._trusted(sigma[:i] + (size,) + sigma[i:])
                if not any(contains_classical(tau, q) for q in key):
                    nxt.append(tau)
        nxt.sort()
        levels.append(nxt)
    return levels[n]


def enumerate_avoiders(basis, n, max_n=DEFAULT_MAX_N, method="auto"):
    """Sorted permutations of length exactly ``n`` avoiding every pattern in ``basis``.

    ``method="filter"`` tests all n! permutations.  ``"auto"`` first grows the
    class cut out by the classical members of the basis (closed under
    deletion, so it can be built by inserting the maximum) and filters only
    that; both give the same set.
    """
    if n > max_n:
        raise ResourceLimitError(f"n = {n} exceeds the enumeration guard {max_n}")
    basis = [b.pattern if isinstance(b, MeshPattern) and b.shading == 0 else b for b in basis]
    if method == "filter":
        return [p for p in all_perms(n) if avoids_all(p, basis)]
    classical = [Perm(b) for b in basis if _is_classical(b)]
    rest = [b for b in basis if not _is_classical(b)]
    if not classical:
        return [p for p in all_perms(n) if avoids_all(p, rest)]
    return [p for p in _classical_class(classical, n) if avoids_all(p, rest)]


def avoiders_upto(basis, n, max_n=DEFAULT_MAX_N, method="auto"):
    return list(chain.from_iterable(
        enumerate_avoiders(basis, k, max_n=max_n, method=method) for k in range(n + 1)))


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisCheck:
    ok: bool
    counterexample: Perm = None
    direction: str = None      # "missing": in the set, not in Av(basis); "extra": the reverse
    checked_upto: int = 0

    def __bool__(self):
        return self.ok


def verify_basis(members, basis, n, max_n=DEFAULT_MAX_N, start=1):
    """Compare a permutation set with Av(basis) length by length up to ``n``.

    ``members`` is a predicate or an iterable of permutations.  Returns the
    shortest (then lexicographically least) counterexample on failure.
    """
    if callable(members):
        member = members
        lengths = None
    else:
        pool = {Perm(p) for p in members}
        member = pool.__contains__
        lengths = {len(p) for p in pool}
    for k in range(start, n + 1):
        if lengths is not None and k not in lengths:
            warnings.warn(f"input set has no permutations of length {k}", stacklevel=2)
        av = set(enumerate_avoiders(basis, k, max_n=max_n))
        a = {p for p in all_perms(k) if member(p)} if lengths is None else \
            {p for p in pool if len(p) == k}
        missing = sorted(a - av)
        extra = sorted(av - a)
        if missing or extra:
            cands = [(p, "missing") for p in missing] + [(p, "extra") for p in extra]
            p, direction = min(cands)
            log.info("basis check failed at length %d: %s is %s", k, p, direction)
            return BasisCheck(False, p, direction, k)
    return BasisCheck(True, checked_upto=n)
