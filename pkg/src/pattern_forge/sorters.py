"""Sorting-device operators and pipelines built from them.

All operators take and return sequences of distinct integers; given a
:class:`~pattern_forge.perm.Perm` they return a ``Perm``.  Every operator
runs in time linear in the input length.
"""

import math
from collections import deque
from dataclasses import dataclass

from .errors import InvalidDepthError, ParseError
from .perm import Perm, complement, is_identity, reverse

INF = math.inf


def _wrap(like, values):
    return Perm._trusted(tuple(values)) if isinstance(like, Perm) else tuple(values)


def _check_depth(d):
    if d != INF and (int(d) != d or d < 1):
        raise InvalidDepthError(f"stack depth must be a positive integer or inf, got {d!r}")


def stack_sort(perm):
    """One pass through an unbounded stack."""
    return stack_sort_depth(perm, INF)


def stack_sort_depth(perm, d):
    """One pass through a stack of depth ``d``.

    The depth counts the pass-through slot, so the stack itself holds ``d - 1``
    entries; an entry that finds the stack full (and smaller than its top)
    bypasses it.
    """
    _check_depth(d)
    cap = d - 1
    stack, out = [], []
    for s in perm:
        while stack and stack[-1] < s:
            out.append(stack.pop())
        if len(stack) < cap:
            stack.append(s)
        else:
            out.append(s)
    out.extend(reversed(stack))
    return _wrap(perm, out)


def stack_sort_depth_recursive(word, d):
    """The same operator via S_d(a n b) = S_d(a) S_{d-1}(b) n, n the maximum."""
    _check_depth(d)
    word = tuple(word)
    if d == 1 or len(word) <= 1:
        return word
    i = word.index(max(word))
    left = stack_sort_depth_recursive(word[:i], d)
    right = stack_sort_depth_recursive(word[i + 1:], d - 1)
    return tuple(left) + tuple(right) + (word[i],)


def bubble_pass(word):
    """A single left-to-right sweep of adjacent swaps."""
    out = list(word)
    for i in range(len(out) - 1):
        if out[i] > out[i + 1]:
            out[i], out[i + 1] = out[i + 1], out[i]
    return _wrap(word, out)


def queue_sort(perm):
    """One pass through a queue whose non-enqueued entries go straight to the output."""
    queue, out = deque(), []
    for s in perm:
        if not queue or queue[-1] < s:
            queue.append(s)
        else:
            while queue and queue[0] < s:
                out.append(queue.popleft())
            out.append(s)
    out.extend(queue)
    return _wrap(perm, out)


def quicksort_pass(perm):
    """One pass of the quicksort operator.

    Splits recursively around the rightmost strong fixed point (an entry larger
    than everything before it and smaller than everything after it); a block
    without one has every entry smaller than its first entry moved, stably, to
    its front.
    """
    return _wrap(perm, _qpass(list(perm)))


def _qpass(w):
    n = len(w)
    if n == 0:
        return []
    suffix_min = [0] * (n + 1)
    suffix_min[n] = INF
    for i in range(n - 1, -1, -1):
        suffix_min[i] = min(w[i], suffix_min[i + 1])
    prefix_max = -INF
    split = -1
    for i, v in enumerate(w):
        if prefix_max < v < suffix_min[i + 1]:
            split = i
        prefix_max = max(prefix_max, v)
    if split >= 0:
        return _qpass(w[:split]) + [w[split]] + _qpass(w[split + 1:])
    first = w[0]
    return [v for v in w if v < first] + [v for v in w if v >= first]


def west_sortable(perm, k):
    if k < 1:
        raise ValueError("number of passes must be at least 1")
    for _ in range(k):
        perm = stack_sort(perm)
    return is_identity(perm)


def avoids_4312_linear(perm):
    """Whether ``perm`` avoids 4312, via S(r(c(Q(perm)))) being sorted."""
    perm = tuple(perm)
    q = queue_sort(perm)
    n = len(q)
    rc = tuple(n + 1 - v for v in reversed(q))
    return is_identity(stack_sort(rc))


# --------------------------------------------------------------------------
# pipelines
# --------------------------------------------------------------------------

STAGES = {
    "stack": stack_sort,
    "queue": queue_sort,
    "rev": lambda p: reverse(p) if isinstance(p, Perm) else tuple(reversed(p)),
    "comp": lambda p: complement(p) if isinstance(p, Perm) else tuple(len(p) + 1 - v for v in p),
    "qpass": quicksort_pass,
    "bubble": bubble_pass,
}


@dataclass(frozen=True)
class SortingPipeline:
    """Stages applied left to right.  ``stackd:<d>`` is a depth-d stack."""

    stages: tuple = ()

    @classmethod
    def parse(cls, text):
        stages = []
        for raw in text.split(","):
            name = raw.strip()
            if not name:
                continue
            if name.startswith("stackd:"):
                arg = name.split(":", 1)[1]
                try:
                    d = INF if arg in ("inf", "oo") else int(arg)
                    _check_depth(d)
                except (ValueError, InvalidDepthError):
                    raise ParseError(f"bad stack depth in stage {name!r}") from None
                stages.append(name if d != INF else "stack")
            elif name in STAGES:
                stages.append(name)
            else:
                raise ParseError(f"unknown pipeline stage {name!r}")
        return cls(tuple(stages))

    def __str__(self):
        return ",".join(self.stages)

    def run(self, perm, trace=False):
        steps = [perm]
        for stage in self.stages:
            if stage.startswith("stackd:"):
                perm = stack_sort_depth(perm, int(stage.split(":", 1)[1]))
            else:
                perm = STAGES[stage](perm)
            steps.append(perm)
        return (perm, steps) if trace else perm


def run_pipeline(perm, pipeline, trace=False):
    if isinstance(pipeline, str):
        pipeline = SortingPipeline.parse(pipeline)
    return pipeline.run(perm, trace=trace)
