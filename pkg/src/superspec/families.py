"""The four supercommuting families on dihedral and dicyclic groups."""

from __future__ import annotations

from .graphs import (
    Graph,
    HJoinDecomposition,
    complete_graph,
    disjoint_union,
    empty_graph,
    equivalence_partition,
    hjoin_compose,
    hjoin_decompose,
    join,
    supercommuting_graph,
    twin_partition,
)
from .groups import FiniteGroup, ParameterRangeError, dicyclic, dihedral

FAMILIES = ("escom_dihedral", "cscom_dihedral", "escom_dicyclic", "cscom_dicyclic")


def normalize_family(name: str) -> str:
    key = name.strip().lower().replace("-", "_")
    if key not in FAMILIES:
        raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    return key


def min_n(family: str) -> int:
    return 3 if normalize_family(family).endswith("dihedral") else 2


def check_n(family: str, n: int) -> None:
    lo = min_n(family)
    if n < lo:
        raise ParameterRangeError(f"{family} needs n >= {lo}, got {n}")


def family_group(family: str, n: int) -> FiniteGroup:
    family = normalize_family(family)
    return dihedral(n) if family.endswith("dihedral") else dicyclic(n)


def family_relation(family: str) -> str:
    return "equality" if normalize_family(family).startswith("escom") else "conjugacy"


def family_case(family: str, n: int) -> str:
    family = normalize_family(family)
    check_n(family, n)
    if family == "escom_dihedral":
        return "n odd" if n % 2 else "n even"
    if family == "escom_dicyclic":
        return "all n"
    if family == "cscom_dihedral":
        if n % 2:
            return "n odd"
        return "n = 0 mod 4" if n % 4 == 0 else "n = 2 mod 4"
    return "n even" if n % 2 == 0 else "n odd"


def family_graph(family: str, n: int) -> Graph:
    check_n(family, n)
    return supercommuting_graph(family_group(family, n), family_relation(family))


def family_decomposition(family: str, n: int, graph: Graph | None = None) -> HJoinDecomposition:
    """Clique decomposition used by the quotient pipeline.

    Conjugacy families use the conjugacy classes.  For equality families the
    equivalence classes are singletons, so the graph is decomposed over its
    closed-twin classes instead, which gives the coarse part structure
    (centre, non-central rotations, commuting reflection pairs).
    """
    family = normalize_family(family)
    if graph is None:
        graph = family_graph(family, n)
    if family.startswith("escom"):
        partition = twin_partition(graph)
    else:
        partition = equivalence_partition(family_group(family, n), "conjugacy")
    return hjoin_decompose(graph, partition)


def realization(family: str, n: int) -> tuple[Graph, list[int]]:
    """Skeleton and per-vertex part sizes of the known realization.

    The part size list is aligned with the skeleton's vertices, so the pair
    can be compared with a decomposition up to size-preserving isomorphism.
    """
    family = normalize_family(family)
    check_n(family, n)
    K1 = complete_graph(1)
    if family == "escom_dihedral":
        if n % 2:
            return join(K1, disjoint_union(empty_graph(n), K1)), [1] + [1] * n + [n - 1]
        return join(K1, disjoint_union(empty_graph(n // 2), K1)), [2] + [2] * (n // 2) + [n - 2]
    if family == "escom_dicyclic":
        return join(K1, disjoint_union(empty_graph(n), K1)), [2] + [2] * n + [2 * n - 2]
    if family == "cscom_dihedral":
        if n % 2:
            m = (n - 1) // 2
            return join(K1, disjoint_union(K1, complete_graph(m))), [1, n] + [2] * m
        h = n // 2
        rot = complete_graph(h - 1)
        refl = disjoint_union(K1, K1) if h % 2 == 0 else complete_graph(2)
        return join(complete_graph(2), disjoint_union(refl, rot)), [1, 1, h, h] + [2] * (h - 1)
    rot = complete_graph(n - 1)
    refl = disjoint_union(K1, K1) if n % 2 == 0 else complete_graph(2)
    return join(complete_graph(2), disjoint_union(refl, rot)), [1, 1, n, n] + [2] * (n - 1)


def realization_graph(family: str, n: int) -> Graph:
    skeleton, sizes = realization(family, n)
    return hjoin_compose(skeleton, sizes)
