from itertools import combinations

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from pattern_forge.errors import InvalidOccurrenceError
from pattern_forge.patterns import (DecoratedPattern, MarkedMeshPattern, MeshPattern, ShadingFamily,
                                    contains, contains_classical, contains_classical_brute,
                                    contains_decorated, contains_marked, contains_mesh,
                                    expand_marked, full_mask, mask_from_squares, maximal_shading,
                                    minimal_blockers, minimal_transversals, occurrences,
                                    shading_consequence, squares_of)
from pattern_forge.perm import Perm, all_perms, flatten
from strategies import mesh_patterns, perms


def mp(p, squares=()):
    return MeshPattern.from_squares(p, squares)


def brute_mesh(perm, patt):
    """Reference: points of perm must avoid every shaded region, by coordinates."""
    k = patt.k
    for occ in combinations(range(len(perm)), k):
        if flatten([perm[i] for i in occ]) != patt.pattern:
            continue
        xs = [-1] + list(occ) + [len(perm)]
        ys = [0] + sorted(perm[i] for i in occ) + [len(perm) + 1]
        ok = True
        for c, r in patt.squares:
            for i in range(xs[c] + 1, xs[c + 1]):
                if ys[r] < perm[i] < ys[r + 1]:
                    ok = False
        if ok:
            return True
    return False


@given(perms(0, 8), perms(0, 4))
def test_classical_matches_brute(perm, patt):
    assert contains_classical(perm, patt) == contains_classical_brute(perm, patt)
    assert len(list(occurrences(perm, patt))) == sum(
        1 for c in combinations(range(len(perm)), len(patt))
        if flatten([perm[i] for i in c]) == patt)


@settings(max_examples=300)
@given(perms(0, 7), mesh_patterns(3))
def test_mesh_matches_brute(perm, patt):
    assert contains_mesh(perm, patt) == brute_mesh(perm, patt)


def test_mesh_examples():
    west = mp((3, 2, 4, 1), [(1, 4)])
    assert contains(Perm((3, 2, 4, 1)), west)
    assert not contains(Perm((3, 5, 2, 4, 1)), west)
    assert contains(Perm((3, 5, 2, 4, 1)), Perm((3, 2, 4, 1)))


def test_maximal_shading():
    # occurrence 23 of 12 in 2341: 4 sits right of the occurrence above it, 1 below
    s = maximal_shading((1, 2), Perm((2, 3, 4, 1)), (0, 1))
    assert squares_of(2, s) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1)]
    with pytest.raises(InvalidOccurrenceError):
        maximal_shading((1, 2), Perm((2, 1)), (0, 1))


@given(perms(1, 6), st.data())
def test_maximal_shading_is_maximal(perm, data):
    k = data.draw(st.integers(1, len(perm)))
    occ = tuple(sorted(data.draw(st.sets(st.integers(0, len(perm) - 1), min_size=k, max_size=k))))
    p = flatten([perm[i] for i in occ])
    s = maximal_shading(p, perm, occ)
    # occurrence survives with s but not with s plus any further square
    assert contains_mesh(perm, MeshPattern(p, s))
    for c, r in set(squares_of(k, full_mask(k))) - set(squares_of(k, s)):
        extra = s | mask_from_squares(k, [(c, r)])
        assert not any(o == occ for o in occurrences(perm, p)
                       if maximal_shading(p, perm, o) & extra == extra)


def test_shading_family_antichain():
    fam = ShadingFamily((1,))
    assert fam.add(0b0011)
    assert not fam.add(0b0001)
    assert fam.add(0b0111)
    assert fam.shadings == {0b0111}
    assert fam.add(0b1000)
    assert len(fam) == 2


def brute_transversals(edges, universe):
    hits = [h for h in range(1 << universe) if all(h & e for e in edges)]
    return sorted(h for h in hits if not any(g != h and g & ~h == 0 for g in hits))


@given(st.lists(st.integers(1, 63), max_size=5))
def test_minimal_transversals_match_brute(edges):
    assert minimal_transversals(edges) == brute_transversals(edges, 6)


def test_minimal_blockers_worked_example():
    fam = ShadingFamily((1, 2), [
        mask_from_squares(2, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1)]),
        mask_from_squares(2, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 1), (2, 2)]),
        mask_from_squares(2, [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)]),
    ])
    got = {tuple(squares_of(2, s)) for s in minimal_blockers(fam)}
    assert got == {((2, 0),), ((0, 0), (1, 1), (2, 2))}


@settings(max_examples=60, deadline=None)
@given(mesh_patterns(2), mesh_patterns(3))
def test_shading_consequence_is_sound(q, p):
    # structural consequence implies semantic consequence on small permutations
    if shading_consequence(p.pattern, p.shading, q.pattern, q.shading):
        for n in range(p.k, 6):
            for perm in all_perms(n):
                if contains_mesh(perm, p):
                    assert contains_mesh(perm, q)


def test_shading_consequence_examples():
    assert shading_consequence((2, 3, 1), 0, (2, 1), 0)
    assert not shading_consequence((1, 2, 3), 0, (2, 1), 0)
    # the point 1 of 231 has only the shaded square (3,0) to its lower right
    assert shading_consequence((2, 3, 1), mask_from_squares(3, [(3, 0)]),
                               (1,), mask_from_squares(1, [(1, 0)]))
    assert not shading_consequence((2, 3, 1), mask_from_squares(3, [(1, 0), (2, 0)]),
                                   (1,), mask_from_squares(1, [(1, 0)]))


def test_marked_pattern_containment():
    mmp = MarkedMeshPattern(mp((2, 1)), [(mask_from_squares(2, [(0, 2)]), 1)])
    assert contains_marked(Perm((3, 2, 1)), mmp)
    assert not contains_marked(Perm((2, 1, 3)), mmp)
    two = MarkedMeshPattern(mp((2, 1)), [(mask_from_squares(2, [(0, 2)]), 2)])
    assert contains_marked(Perm((3, 4, 2, 1)), two)
    assert not contains_marked(Perm((4, 2, 1, 3)), two)


@pytest.mark.parametrize("mmp", [
    MarkedMeshPattern(mp((2, 1)), [(mask_from_squares(2, [(0, 2)]), 1)]),
    MarkedMeshPattern(mp((1, 2), [(1, 1)]), [(mask_from_squares(2, [(0, 0), (0, 1)]), 1)]),
    MarkedMeshPattern(mp((2, 1, 4, 3)), [(mask_from_squares(4, [(0, 0)]), 1),
                                         (mask_from_squares(4, [(4, 4)]), 1)]),
    MarkedMeshPattern(mp((3, 1, 4, 2), [(2, 2)]), [(mask_from_squares(4, [(0, 0), (1, 0)]), 1)]),
    MarkedMeshPattern(mp((2, 1)), [(mask_from_squares(2, [(1, 1), (1, 2)]), 2)]),
])
def test_expand_marked_equivalent(mmp):
    expansion = expand_marked(mmp)
    for n in range(0, 7):
        for perm in all_perms(n):
            assert contains_marked(perm, mmp) == any(contains_mesh(perm, e) for e in expansion), perm


def test_decorated_relative_semantics():
    # 21 whose left-above region holds a 21
    dp = DecoratedPattern(Perm((2, 1)), 0, (),
                          (), [(mask_from_squares(2, [(0, 2)]), mp((2, 1)))])
    assert contains_decorated(Perm((4, 3, 2, 1)), dp)
    assert not contains_decorated(Perm((3, 4, 2, 1)), dp)
    avoid = DecoratedPattern(Perm((2, 1)), 0, (), [(mask_from_squares(2, [(0, 2)]), mp((2, 1)))])
    assert contains_decorated(Perm((3, 4, 2, 1)), avoid)
    assert contains_decorated(Perm((4, 3, 2, 1)), avoid)  # via the occurrence 43
    # 54321: the occurrence 41 has only 5 above-left of it
    assert contains_decorated(Perm((5, 4, 3, 2, 1)), DecoratedPattern(
        Perm((2, 1)), mask_from_squares(2, [(2, 0), (2, 1), (2, 2), (1, 0)]), (),
        [(mask_from_squares(2, [(0, 2)]), mp((2, 1)))]))


def test_decorated_spec_example():
    # S_3(45321) = 42135 keeps 2 before 1: the region left of and above 2 is 4,5,3 and
    # its two right-to-left maxima 5,3 fill the capacity-2 stack
    from pattern_forge.preimage import make_vd
    R2 = mask_from_squares(2, [(0, 2)])
    R1 = mask_from_squares(2, [(1, 2)])
    kept = DecoratedPattern(Perm((2, 1)), R1, (), (), [(R2, make_vd(2))])
    assert contains_decorated(Perm((4, 5, 3, 2, 1)), kept)
    assert not contains_decorated(Perm((3, 4, 5, 2, 1)), kept)


def test_occurrences_of_12_in_2341():
    occ = sorted(occurrences(Perm((2, 3, 4, 1)), (1, 2)))
    assert [tuple(Perm((2, 3, 4, 1))[i] for i in o) for o in occ] == [(2, 3), (2, 4), (3, 4)]
    assert list(occurrences(Perm((1, 2, 3)), (3, 2, 1))) == []


def test_maximal_shading_examples():
    got = squares_of(2, maximal_shading((1, 2), Perm((1, 3, 2, 4)), (2, 3)))
    assert got == [(0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]
    assert maximal_shading((2, 1, 3), Perm((2, 1, 3)), (0, 1, 2)) == full_mask(3)
    got = set(squares_of(2, maximal_shading((1, 2), Perm((1, 2, 3)), (0, 2))))
    assert got == set(squares_of(2, full_mask(2))) - {(1, 1)}


def test_consequence_figure_example():
    R = mask_from_squares(4, [(0, 0), (4, 3), (4, 4)])
    Rq = mask_from_squares(2, [(0, 0), (2, 2)])
    assert shading_consequence((1, 2, 4, 3), R, (1, 2), Rq)
    assert not shading_consequence((1, 2), mask_from_squares(2, [(2, 0)]),
                                   (1, 2), mask_from_squares(2, [(0, 0), (1, 1), (2, 2)]))


@given(mesh_patterns(3))
def test_consequence_reflexive(p):
    assert shading_consequence(p.pattern, p.shading, p.pattern, p.shading)


@settings(max_examples=150)
@given(perms(0, 6), mesh_patterns(3), st.integers(0, 1 << 16))
def test_shading_monotone(perm, patt, sub):
    smaller = MeshPattern(patt.pattern, patt.shading & sub)
    if contains_mesh(perm, patt):
        assert contains_mesh(perm, smaller)


@given(st.lists(st.integers(0, 15), max_size=5))
def test_minimal_blockers_properties(masks):
    fam = ShadingFamily((1,), masks)
    blockers = list(minimal_blockers(fam))
    for R in blockers:
        assert all(R & ~T for T in fam.shadings)
        for sq in squares_of(1, R):
            smaller = R & ~mask_from_squares(1, [sq])
            assert not all(smaller & ~T for T in fam.shadings)
    for a in blockers:
        assert not any(a != b and b & ~a == 0 for b in blockers)


def test_minimal_blockers_trivial_families():
    assert list(minimal_blockers(ShadingFamily((1, 2), [full_mask(2)]))) == []
    assert list(minimal_blockers(ShadingFamily((1, 2)))) == [0]


@settings(max_examples=150)
@given(perms(0, 6), mesh_patterns(3))
def test_plain_decorated_is_mesh(perm, patt):
    dp = DecoratedPattern(patt.pattern, patt.shading)
    assert contains_decorated(perm, dp) == contains_mesh(perm, patt)


def test_vacuous_marks():
    base = mp((2, 1), [(1, 1)])
    zero = MarkedMeshPattern(base, [(mask_from_squares(2, [(0, 0)]), 0)])
    for perm in all_perms(5):
        assert contains_marked(perm, zero) == contains_mesh(perm, base)


def test_corner_marked_2143():
    from pattern_forge.corpus import SHAPE32_MARKED
    first = SHAPE32_MARKED[0]
    assert not contains_marked(Perm.identity(6), first)
    expansion = expand_marked(first)
    # one point below-left and one above-right of 2143: a single classical pattern
    assert [e.pattern for e in expansion] == [Perm((1, 3, 2, 5, 4, 6))]
    for n in range(8):
        for perm in all_perms(n):
            assert contains_marked(perm, first) == contains_classical(perm, expansion[0].pattern)


def test_empty_pattern_and_single_point():
    single = DecoratedPattern(Perm((1,)))
    assert not contains_decorated(Perm(()), single)
    assert all(contains_decorated(p, single) for n in range(1, 4) for p in all_perms(n))


def test_consequence_sound_length_four():
    import random
    rng = random.Random(7)
    pairs = []
    while len(pairs) < 12:
        p = Perm(rng.sample(range(1, 5), 4))
        R = rng.getrandbits(25) & rng.getrandbits(25)
        j = rng.randint(1, 3)
        idx = sorted(rng.sample(range(4), j))
        q = flatten([p[i] for i in idx])
        Rq = rng.getrandbits((j + 1) ** 2) & rng.getrandbits((j + 1) ** 2)
        if shading_consequence(p, R, q, Rq):
            pairs.append((MeshPattern(p, R), MeshPattern(q, Rq)))
    for n in range(4, 8):
        for perm in all_perms(n):
            for big, small in pairs:
                if contains_mesh(perm, big):
                    assert contains_mesh(perm, small), (perm, big, small)
