import pytest
from hypothesis import given

from pattern_forge.bisc import enumerate_avoiders
from pattern_forge.corpus import (CLASSES, HOOK_BASIS, is_hook, longest_increasing, named_class,
                                  rsk_shape, shape_contains)
from pattern_forge.errors import ResourceLimitError, UnknownClassError
from pattern_forge.patterns import avoids_all, contains_classical
from pattern_forge.perm import Perm, all_perms, inverse
from strategies import perms


def test_shapes():
    assert rsk_shape(Perm.identity(5)) == (5,)
    assert rsk_shape(Perm.decreasing(4)) == (1, 1, 1, 1)
    assert rsk_shape(Perm((2, 1, 4, 3))) == (2, 2)
    assert rsk_shape(()) == ()


def test_shape_contains():
    assert shape_contains((3, 3, 1), (3, 2))
    assert not shape_contains((6,), (2, 2))
    assert not shape_contains((2, 1, 1), (2, 2))
    assert is_hook((3, 1, 1)) and not is_hook((2, 2))


@given(perms(0, 8))
def test_first_row_is_lis(p):
    shape = rsk_shape(p)
    assert sum(shape) == len(p)
    assert list(shape) == sorted(shape, reverse=True)
    assert (shape[0] if shape else 0) == longest_increasing(p)
    # a permutation and its inverse share a shape; columns count decreasing runs
    assert rsk_shape(inverse(p)) == shape
    assert len(shape) == longest_increasing([-v for v in p])


def test_west_2_small():
    four = [p for p in named_class("west_2", 4) if len(p) == 4]
    assert len(four) == 22
    assert Perm((2, 3, 4, 1)) not in four and Perm((3, 2, 4, 1)) not in four
    assert len(named_class("west_2", 4)) == 1 + 1 + 2 + 6 + 22


def test_stack_sortable_small():
    three = [p for p in named_class("stack_sortable", 3) if len(p) == 3]
    assert set(three) == set(all_perms(3)) - {Perm((2, 3, 1))}


def test_hook_class_matches_basis():
    for n in range(7):
        members = {p for p in named_class("hook_rsk", n) if len(p) == n}
        assert members == {p for p in all_perms(n) if avoids_all(p, HOOK_BASIS)}


@pytest.mark.parametrize("name", sorted(CLASSES))
def test_downward_consistent(name):
    six = named_class(name, 6)
    five = named_class(name, 5)
    assert [p for p in six if len(p) <= 5] == five


def test_smooth_two_paths():
    for n in range(8):
        a = enumerate_avoiders([(1, 3, 2, 4), (2, 1, 4, 3)], n)
        b = enumerate_avoiders([(1, 3, 2, 4), (2, 1, 4, 3)], n, method="filter")
        assert a == b
        if n <= 6:
            assert len(a) == sum(1 for p in named_class("smooth", n) if len(p) == n)
    assert [len(enumerate_avoiders([(1, 3, 2, 4), (2, 1, 4, 3)], n)) for n in range(1, 7)] == \
        [1, 2, 6, 22, 88, 366]


def test_stack_sortable_is_av231():
    for n in range(8):
        members = [p for p in named_class("stack_sortable", n) if len(p) == n]
        assert members == [p for p in all_perms(n) if not contains_classical(p, (2, 3, 1))]


def test_errors():
    with pytest.raises(UnknownClassError):
        named_class("nope", 3)
    with pytest.raises(ResourceLimitError):
        named_class("west_2", 10)
