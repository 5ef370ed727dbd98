from __future__ import annotations

import numpy as np
import pytest

from superspec.groups import (
    AssociativityError,
    CayleyParseError,
    IdentityError,
    LatinSquareError,
    ParameterRangeError,
    center,
    conjugacy_classes,
    dicyclic,
    dihedral,
    dump_cayley_table,
    element_order,
    element_orders,
    group_from_table,
    load_cayley_table,
    validate_table,
)


def test_dihedral_examples():
    G = dihedral(3)
    assert G.order == 6
    assert G.mul(1, 3) == 4  # a.b = ab
    assert G.mul(3, 1) == 5  # b.a = a^2 b
    assert dihedral(4).table[1, 1] == 2
    D10 = dihedral(5)
    assert all(D10.table[5 + i, 5 + i] == 0 for i in range(5))
    assert G.names == ("e", "a", "a^2", "b", "ab", "a^2b")
    with pytest.raises(ParameterRangeError):
        dihedral(2)


def test_dicyclic_examples():
    Q8 = dicyclic(2)
    assert Q8.order == 8
    assert element_order(Q8, 4) == 4  # b
    assert [g for g in range(8) if element_order(Q8, g) == 2] == [2]  # a^n only
    Q12 = dicyclic(3)
    for i in range(6):
        for j in range(6):
            assert Q12.mul(6 + i, 6 + j) == (i - j + 3) % 6
    with pytest.raises(ParameterRangeError):
        dicyclic(1)


@pytest.mark.parametrize("G", [dihedral(n) for n in (3, 4, 7, 12)] + [dicyclic(n) for n in (2, 3, 6)])
def test_builtin_groups_are_valid(G):
    validate_table(G.table, check_associativity=True)
    assert all(G.order % o == 0 for o in element_orders(G))
    inv = G.inverses()
    assert all(G.mul(g, int(inv[g])) == 0 for g in range(G.order))


def test_conjugacy_class_sizes():
    assert sorted(conjugacy_classes(dihedral(3)).sizes()) == [1, 2, 3]
    assert sorted(conjugacy_classes(dihedral(4)).sizes()) == [1, 1, 2, 2, 2]
    assert sorted(conjugacy_classes(dicyclic(3)).sizes()) == [1, 1, 2, 2, 3, 3]
    assert conjugacy_classes(dihedral(5)).blocks[0] == (0,)


@pytest.mark.parametrize("n", range(3, 16))
def test_dihedral_class_structure(n):
    cc = conjugacy_classes(dihedral(n))
    singletons = sorted(b[0] for b in cc.blocks if len(b) == 1)
    assert singletons == center(dihedral(n))
    if n % 2:
        assert sorted(cc.sizes()) == [1] + [2] * ((n - 1) // 2) + [n]


@pytest.mark.parametrize("n", range(2, 12))
def test_dicyclic_class_structure(n):
    cc = conjugacy_classes(dicyclic(n))
    assert len(cc) == n + 3
    assert sorted(cc.sizes()) == sorted([1, 1] + [2] * (n - 1) + [n, n])


def test_element_orders():
    assert element_order(dihedral(5), 0) == 1
    assert element_order(dihedral(5), 1) == 5
    with pytest.raises(IndexError):
        element_order(dihedral(5), 10)


def test_load_small_tables():
    trivial = load_cayley_table("1\n0")
    assert trivial.order == 1
    c2 = load_cayley_table("2\r\n0 1\r\n1 0\r\n")
    assert c2.order == 2 and c2.mul(1, 1) == 0


def test_round_trip():
    for G in (dihedral(3), dicyclic(2)):
        H = load_cayley_table(dump_cayley_table(G))
        assert H == G
        assert H.names == G.names


def test_identity_is_moved_to_index_zero():
    # Z_3 written with the identity in position 2
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = group_from_table(table, ["x", "y", "e"])
    assert G.names[0] == "e"
    assert np.array_equal(G.table[0], np.arange(3))


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("abc", 1),
        ("2\n0 1\n1", 3),
        ("2\n0 1\n1 x", 3),
        ("2\n0 1", 2),
        ("2\n0 1\n1 0\nnames: e", 4),
        ("2\n0 1\nnames: e,a\n1 0", 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(CayleyParseError) as info:
        load_cayley_table(text)
    assert info.value.line == line


def test_validation_errors():
    with pytest.raises(LatinSquareError):
        load_cayley_table("2\n0 1\n0 1")
    with pytest.raises(IdentityError):
        load_cayley_table("3\n0 2 1\n2 1 0\n1 0 2")  # x*y = -x-y mod 3 has no identity
    # a Latin square with identity that is not associative (a loop of order 5)
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(AssociativityError):
        group_from_table(loop)
    group_from_table(loop, check_associativity=False)
