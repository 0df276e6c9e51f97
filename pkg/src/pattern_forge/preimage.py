"""Decorated-pattern descriptions of sorting-device preimages.

For a target pattern p and a device, every classical pattern that can turn
into p (a candidate) is decorated so that an occurrence of the decorated
candidate in a permutation is exactly an occurrence that the device maps onto
an occurrence of p.  The permutations avoiding all decorated candidates are
then the ones whose image avoids p.

Supported devices: a stack of depth d (``Device.stack(d)``), an unbounded
stack (``Device.stack()``) and a queue (``Device.queue()``).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidCandidateError, InvalidDepthError, ResourceLimitError, UnsupportedDeviceError
from .patterns import (DecoratedPattern, MarkedMeshPattern, MeshPattern, _vertex_inside,
                       avoids_all, contains_classical, mask_from_squares, rect_mask)
from .perm import Perm, all_perms, flatten, inversions
from .sorters import queue_sort, stack_sort_depth

INF = math.inf
DEFAULT_MAX_N = 9


# --------------------------------------------------------------------------
# devices
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Device:
    kind: str               # "stack" or "queue"
    depth: float = INF      # stacks only

    @classmethod
    def stack(cls, d=INF):
        if d != INF and (int(d) != d or d < 1):
            raise InvalidDepthError(f"stack depth must be a positive integer or inf, got {d!r}")
        return cls("stack", d if d == INF else int(d))

    @classmethod
    def queue(cls):
        return cls("queue")

    @classmethod
    def parse(cls, name, d=None):
        """``stack``, ``stackd`` (needs ``d``) or ``queue``."""
        if name == "queue":
            return cls.queue()
        if name == "stack":
            return cls.stack(INF if d is None else d)
        if name == "stackd":
            if d is None:
                raise InvalidDepthError("device stackd needs a depth")
            return cls.stack(d)
        raise UnsupportedDeviceError(f"no preimage algorithm for device {name!r}")

    def apply(self, perm):
        if self.kind == "queue":
            return queue_sort(perm)
        return stack_sort_depth(perm, self.depth)

    def __str__(self):
        if self.kind == "queue":
            return "queue"
        return "stack" if self.depth == INF else f"stackd:{self.depth}"


def _device(device, d=None):
    if isinstance(device, Device):
        return device
    return Device.parse(device, d)


# --------------------------------------------------------------------------
# V_c
# --------------------------------------------------------------------------

def make_vd(c):
    """V_c: c(c-1)...1 with the squares ``(i, j)``, ``i + j > c`` shaded.

    A word contains V_c iff it has at least c right-to-left maxima, which is
    exactly the condition that c earlier, larger entries are still waiting on
    a stack when the next entry arrives.
    """
    if c < 0:
        raise ValueError("V_c needs c >= 0")
    squares = [(i, j) for i in range(c + 1) for j in range(c + 1) if i + j > c]
    return MeshPattern.from_squares(range(c, 0, -1), squares)


# --------------------------------------------------------------------------
# candidates
# --------------------------------------------------------------------------

def cand_stack(p, d=INF):
    """Classical patterns that one pass of a depth-``d`` stack can map onto ``p``.

    Works on words; the result is flattened to permutations.
    """
    word = tuple(p)
    if d != INF and (int(d) != d or d < 1):
        raise InvalidDepthError(f"bad depth {d!r}")
    dd = len(word) + 1 if d == INF or d > len(word) + 1 else int(d)
    return {flatten(w) for w in _cand_words_general(word, dd)}


@lru_cache(maxsize=None)
def _cand_words_general(word, d):
    # p = alpha n beta, n its maximum; the candidate is gamma n delta with gamma
    # feeding a_1..a_j and delta (one level shallower) feeding a_{j+1}..a_i beta
    if d == 1 or not word:
        return frozenset([word])
    i = word.index(max(word))
    n = word[i]
    alpha, beta = word[:i], word[i + 1:]
    out = set()
    for j in range(i + 1):
        for g in _cand_words_general(alpha[:j], d):
            for h in _cand_words_general(alpha[j:] + beta, d - 1):
                out.add(g + (n,) + h)
    return frozenset(out)


def cand_queue(p):
    """Permutations of the same length whose inversions include those of ``p``."""
    target = inversions(p)
    return {lam for lam in all_perms(len(p)) if target <= inversions(lam)}


def candidates(device, p, d=None):
    dev = _device(device, d)
    if dev.kind == "queue":
        return cand_queue(p)
    return cand_stack(p, dev.depth)


# --------------------------------------------------------------------------
# decoration engine
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _State:
    shading: int
    marks: frozenset
    avoid: frozenset
    contain: frozenset


def _sub(a, b):
    return a & ~b == 0


def _points_inside(lam, mask):
    k = len(lam)
    return any(_vertex_inside(k, mask, t, u) for t, u in enumerate(lam, 1))


def _decorate(lam, p_inv, regions, keep_dec, kill_dec):
    """Branch over the inversions of ``lam``.

    ``regions(i, j)`` gives ``(R1, R2)``: R1 is the region whose points keep
    the inversion, R2 the region whose decoration decides it once R1 is
    shaded.  ``keep_dec`` is the pattern R2 must contain for the inversion to
    survive (None: impossible); ``kill_dec`` the one it must avoid for the
    inversion to vanish (None: no condition).
    """
    states = {_State(0, frozenset(), frozenset(), frozenset())}
    for i, j in sorted(inversions(lam), reverse=True):
        R1, R2 = regions(i, j)
        nxt = set()
        for st in states:
            S = st.shading
            union = S | R1
            blocked = (_points_inside(lam, union)
                       or any(_sub(r, union) for r, _ in st.marks)
                       or any(_sub(r, union) for r, _ in st.contain))
            if (i, j) in p_inv:
                if not _sub(R1, S):
                    if _points_inside(lam, R1):
                        nxt.add(st)
                    else:
                        nxt.add(_State(S, st.marks | {(R1 & ~S, 1)}, st.avoid, st.contain))
                if keep_dec is not None and not blocked \
                        and not any(_sub(R2, r) for r, _ in st.avoid):
                    nxt.add(_State(union, st.marks, st.avoid, st.contain | {(R2, keep_dec)}))
            else:
                if not blocked and not any(_sub(r, R2) for r, _ in st.contain):
                    avoid = st.avoid if kill_dec is None else st.avoid | {(R2, kill_dec)}
                    nxt.add(_State(union, st.marks, avoid, st.contain))
        states = nxt
    out = set()
    for st in states:
        dp = _simplify(lam, st)
        if dp is not None:
            out.add(dp)
    return out


def _simplify(lam, st):
    """Canonical form; None when the decorated pattern can never occur."""
    k = len(lam)
    S = st.shading
    marks = set()
    for region, count in st.marks:
        if not _points_inside(lam, region):
            region &= ~S
        if count and region == 0:
            return None
        if count:
            marks.add((region, count))
    marks = {(r, c) for r, c in marks
             if not any((r2, c2) != (r, c) and _sub(r2, r) and c2 >= c for r2, c2 in marks)}
    avoid = set()
    for region, q in st.avoid:
        if q.k == 0:
            return None
        avoid.add((region, q))
    contain = {(r, q) for r, q in st.contain if q.k > 0}
    return simplest(DecoratedPattern(lam, S, marks, avoid, contain))


def simplest(dp):
    """The same pattern as a mesh or marked mesh pattern when it has no decorations."""
    if not isinstance(dp, DecoratedPattern) or dp.avoid or dp.contain:
        return dp
    if dp.marks:
        return MarkedMeshPattern(MeshPattern(dp.pattern, dp.shading), dp.marks)
    return MeshPattern(dp.pattern, dp.shading)


def _stack_regions(lam):
    n = len(lam)
    pos = {v: t for t, v in enumerate(lam, 1)}

    def regions(i, j):
        R1 = rect_mask(n, pos[i], pos[j] - 1, i, n)
        R2 = rect_mask(n, 0, pos[i] - 1, i, n)
        return R1, R2
    return regions


def _queue_regions(lam):
    n = len(lam)
    pos = {v: t for t, v in enumerate(lam, 1)}

    def regions(i, j):
        left = rect_mask(n, 0, pos[i] - 1, i, n)
        between = rect_mask(n, pos[i], pos[j] - 1, i, n)
        return left, between
    return regions


def decorate_stack_candidate(d, p, lam):
    p, lam = Perm(p), Perm(lam)
    if lam not in cand_stack(p, d):
        raise InvalidCandidateError(f"{lam} is not a depth-{d} stack candidate for {p}")
    if d == INF:
        keep, kill = None, None
    else:
        keep = kill = make_vd(int(d) - 1)
    return _decorate(lam, inversions(p), _stack_regions(lam), keep, kill)


QUEUE_DEC = MeshPattern(Perm((2, 1)))


def decorate_queue_candidate(p, lam):
    p, lam = Perm(p), Perm(lam)
    if len(p) != len(lam) or not inversions(p) <= inversions(lam):
        raise InvalidCandidateError(f"{lam} is not a queue candidate for {p}")
    return _decorate(lam, inversions(p), _queue_regions(lam), QUEUE_DEC, QUEUE_DEC)


# --------------------------------------------------------------------------
# bases and the oracle
# --------------------------------------------------------------------------

def _sort_key(patt):
    from .notation import format_pattern
    return (patt.k, tuple(patt.pattern), format_pattern(patt))


@dataclass(frozen=True)
class PreimageBasis:
    target_class: tuple
    device: Device
    decorated: tuple

    def __iter__(self):
        return iter(self.decorated)

    def __len__(self):
        return len(self.decorated)

    def avoiders(self, n):
        return [pi for pi in all_perms(n) if avoids_all(pi, self.decorated)]


def preimage_basis(device, targets, d=None):
    """Decorated patterns whose avoiders are the permutations the device maps into Av(targets)."""
    dev = _device(device, d)
    targets = tuple(sorted({Perm(getattr(t, "pattern", t)) for t in targets},
                           key=lambda p: (len(p), tuple(p))))
    out = set()
    for p in targets:
        for lam in sorted(candidates(dev, p)):
            if dev.kind == "queue":
                out |= decorate_queue_candidate(p, lam)
            else:
                out |= decorate_stack_candidate(dev.depth, p, lam)
    return PreimageBasis(targets, dev, tuple(sorted(out, key=_sort_key)))


def brute_force_preimage(device, targets, n, d=None, max_n=DEFAULT_MAX_N):
    """Permutations of length n whose image under the device avoids every target."""
    if n > max_n:
        raise ResourceLimitError(f"n = {n} exceeds the oracle guard {max_n}")
    dev = _device(device, d)
    targets = [Perm(getattr(t, "pattern", t)) for t in targets]
    return [pi for pi in all_perms(n)
            if not any(contains_classical(dev.apply(pi), t) for t in targets)]


def check_preimage(basis, n, max_n=DEFAULT_MAX_N):
    """Compare a basis with the oracle at length n; returns (ok, first differing permutation)."""
    expected = set(brute_force_preimage(basis.device, basis.target_class, n, max_n=max_n))
    for pi in all_perms(n):
        if (pi in expected) != avoids_all(pi, basis.decorated):
            return False, pi
    return True, None


__all__ = [
    "Device", "make_vd", "cand_stack", "cand_queue", "candidates",
    "decorate_stack_candidate", "decorate_queue_candidate", "preimage_basis",
    "brute_force_preimage", "check_preimage", "PreimageBasis", "simplest", "mask_from_squares",
]
