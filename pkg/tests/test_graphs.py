from __future__ import annotations

import numpy as np
import pytest

from superspec.families import (
    FAMILIES,
    family_decomposition,
    family_graph,
    min_n,
    realization,
    realization_graph,
)
from superspec.graphs import (
    Graph,
    NotAnHJoinError,
    commuting_graph,
    complete_graph,
    disjoint_union,
    empty_graph,
    equivalence_partition,
    hjoin_compose,
    hjoin_decompose,
    is_isomorphic,
    join,
    matches_shape,
    super_graph,
    supercommuting_graph,
    twin_partition,
)
from superspec.groups import EquivalencePartition, dicyclic, dihedral, load_cayley_table


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        Graph([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        Graph([[1]])
    g = complete_graph(3)
    with pytest.raises(ValueError):
        g.adjacency[0, 1] = False


def test_commuting_graph_examples():
    assert commuting_graph(load_cayley_table("2\n0 1\n1 0")) == complete_graph(2)
    g = commuting_graph(dihedral(3))
    assert g.degrees() == [5, 2, 2, 1, 1, 1]
    assert g.adjacency[1, 2]
    assert commuting_graph(dicyclic(2)).degrees()[2] == 7


def test_equivalence_partitions():
    assert equivalence_partition(dihedral(4), "equality").sizes() == [1] * 8
    assert sorted(equivalence_partition(dihedral(5), "conjugacy").sizes()) == [1, 2, 2, 5]
    assert sorted(equivalence_partition(dihedral(3), "order").sizes()) == [1, 2, 3]
    with pytest.raises(ValueError):
        equivalence_partition(dihedral(3), "power")


def test_super_graph_examples():
    g = commuting_graph(dihedral(5))
    assert super_graph(g, equivalence_partition(dihedral(5), "equality")) == g
    K = complete_graph(6)
    assert super_graph(K, EquivalencePartition.from_blocks([[0, 3], [1], [2, 4, 5]])) == K
    cs = supercommuting_graph(dihedral(3), "conjugacy")
    d = hjoin_decompose(cs, equivalence_partition(dihedral(3), "conjugacy"))
    assert matches_shape(d, join(complete_graph(1), disjoint_union(complete_graph(1), complete_graph(1))), [1, 2, 3])
    with pytest.raises(ValueError):
        super_graph(g, equivalence_partition(dihedral(3), "equality"))


@pytest.mark.parametrize("relation", ["equality", "conjugacy", "order"])
@pytest.mark.parametrize("G", [dihedral(4), dihedral(6), dicyclic(3)])
def test_super_graph_contains_a_graph(G, relation):
    a = commuting_graph(G)
    s = supercommuting_graph(G, relation)
    assert not (a.adjacency & ~s.adjacency).any()


def even_order(n: int) -> list[int]:
    """Vertex order e, a^h, remaining rotations, then pairs a^i b, a^{i+h} b."""
    h = n // 2
    rotations = [0, h] + [i for i in range(1, n) if i != h]
    reflections = [n + x for i in range(h) for x in (i, i + h)]
    return rotations + reflections


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_escom_even_adjacency_pattern(n):
    g = family_graph("escom_dihedral", n).permuted(even_order(n))
    A = g.int_matrix()
    assert all(A[0][j] == A[1][j] == 1 for j in range(2, 2 * n))
    for i in range(2, n):
        assert all(A[i][j] == (j < n and j != i) for j in range(2 * n))
    for i in range(n, 2 * n):
        partner = i + 1 if (i - n) % 2 == 0 else i - 1
        assert [j for j in range(2, 2 * n) if A[i][j]] == [partner]


@pytest.mark.parametrize("n", [3, 5, 7])
def test_escom_odd_adjacency_pattern(n):
    A = np.array(family_graph("escom_dihedral", n).int_matrix())
    expected = np.zeros((2 * n, 2 * n), dtype=int)
    expected[:n, :n] = 1 - np.eye(n, dtype=int)
    expected[0, n:] = expected[n:, 0] = 1
    assert np.array_equal(A, expected)


def test_hjoin_decompose_examples():
    d = family_decomposition("escom_dihedral", 3)
    assert sorted(d.part_sizes) == [1, 1, 1, 1, 2]
    skeleton = join(complete_graph(1), disjoint_union(empty_graph(3), complete_graph(1)))
    assert is_isomorphic(d.skeleton, skeleton)
    d = family_decomposition("cscom_dicyclic", 2)
    assert sorted(d.part_sizes) == [1, 1, 2, 2, 2]
    assert is_isomorphic(d.skeleton, join(complete_graph(2), empty_graph(3)))
    d = hjoin_decompose(complete_graph(4), EquivalencePartition.from_blocks([[0], [1], [2], [3]]))
    assert d.skeleton == complete_graph(4) and d.part_sizes == (1, 1, 1, 1)


def test_hjoin_decompose_errors():
    path = Graph([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    with pytest.raises(NotAnHJoinError, match="not an H-join"):
        hjoin_decompose(path, EquivalencePartition.from_blocks([[0, 2], [1]]))
    with pytest.raises(NotAnHJoinError, match="partially adjacent"):
        hjoin_decompose(path, EquivalencePartition.from_blocks([[0, 1], [2]]))


def test_hjoin_compose_examples():
    assert hjoin_compose(complete_graph(1), [4]) == complete_graph(4)
    assert hjoin_compose(empty_graph(2), [2, 3]) == disjoint_union(complete_graph(2), complete_graph(3))
    d8 = family_decomposition("escom_dihedral", 4)
    assert is_isomorphic(hjoin_compose(d8.skeleton, d8.part_sizes), family_graph("escom_dihedral", 4))
    with pytest.raises(ValueError):
        hjoin_compose(complete_graph(2), [1])
    with pytest.raises(ValueError):
        hjoin_compose(complete_graph(2), [1, 0])


@pytest.mark.parametrize("family", FAMILIES)
def test_round_trip_and_shape(family):
    for n in range(min_n(family), 11):
        g = family_graph(family, n)
        d = family_decomposition(family, n, g)
        assert is_isomorphic(hjoin_compose(d.skeleton, d.part_sizes), g)
        skeleton, sizes = realization(family, n)
        assert matches_shape(d, skeleton, sizes)
        assert is_isomorphic(realization_graph(family, n), g)


def test_shape_rejects_wrong_sizes():
    d = family_decomposition("cscom_dihedral", 5)
    skeleton, sizes = realization("cscom_dihedral", 5)
    assert not matches_shape(d, skeleton, sorted(sizes, reverse=True)[:-1] + [3])
    # same multiset, sizes attached to the wrong skeleton vertices
    assert not matches_shape(d, skeleton, list(reversed(sizes)))


@pytest.mark.parametrize("n", range(3, 13, 2))
def test_odd_dihedral_part_counts(n):
    es = family_decomposition("escom_dihedral", n)
    assert sorted(es.part_sizes) == sorted([1] * (n + 1) + [n - 1])
    cs = family_decomposition("cscom_dihedral", n)
    assert sorted(cs.part_sizes) == sorted([1, n] + [2] * ((n - 1) // 2))


@pytest.mark.parametrize("n", range(2, 8))
def test_dicyclic_matches_dihedral_of_twice_n(n):
    for kind in ("escom", "cscom"):
        assert is_isomorphic(family_graph(f"{kind}_dicyclic", n), family_graph(f"{kind}_dihedral", 2 * n))


def test_twin_partition_is_coarsest():
    g = family_graph("cscom_dihedral", 6)
    conj = equivalence_partition(dihedral(6), "conjugacy")
    twins = twin_partition(g)
    assert len(twins) <= len(conj)
    hjoin_decompose(g, twins)


def test_exports():
    g = commuting_graph(dihedral(3))
    dot = g.to_dot()
    assert dot.startswith("graph G {") and '0 [label="e"];' in dot and "0 -- 1;" in dot
    rows = g.to_csv().splitlines()
    assert rows[0] == ",e,a,a^2,b,ab,a^2b"
    assert rows[1] == "e,0,1,1,1,1,1"
