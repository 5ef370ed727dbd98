"""Graph isomorphism for small graphs by colour refinement and backtracking.

Vertex colours (for instance H-join part sizes) must be preserved by the
isomorphism.  Intended for graphs of up to a few dozen vertices.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

MAX_VERTICES = 64


def _refine(adjs: list[np.ndarray], colours: list[list[int]]) -> list[list[int]]:
    """Colour refinement run on several graphs with one shared palette."""
    cols = [list(c) for c in colours]
    while True:
        sigs = []
        for A, c in zip(adjs, cols):
            n = len(c)
            sigs.append([
                (c[v], tuple(sorted(c[w] for w in np.nonzero(A[v])[0])))
                for v in range(n)
            ])
        palette = {s: k for k, s in enumerate(sorted({s for sg in sigs for s in sg}))}
        new = [[palette[s] for s in sg] for sg in sigs]
        if len({x for c in new for x in c}) == len({x for c in cols for x in c}):
            return new
        cols = new


def find_isomorphism(A1, A2, colours1: Sequence | None = None, colours2: Sequence | None = None,
                     max_vertices: int = MAX_VERTICES) -> list[int] | None:
    """A vertex map ``f`` with ``A1[i, j] == A2[f[i], f[j]]``, or ``None``."""
    A1 = np.asarray(A1, dtype=bool)
    A2 = np.asarray(A2, dtype=bool)
    n = A1.shape[0]
    if A2.shape[0] != n:
        return None
    if n > max_vertices:
        raise ValueError(f"isomorphism search limited to {max_vertices} vertices")
    if n == 0:
        return []
    c1 = list(colours1) if colours1 is not None else [0] * n
    c2 = list(colours2) if colours2 is not None else [0] * n
    if sorted(map(repr, c1)) != sorted(map(repr, c2)):
        return None
    keys = {k: i for i, k in enumerate(sorted(set(map(repr, c1))))}
    start = [[keys[repr(x)] for x in c1], [keys[repr(x)] for x in c2]]
    return _search(A1, A2, start[0], start[1])


def _search(A1, A2, c1, c2):
    r1, r2 = _refine([A1, A2], [c1, c2])
    if sorted(r1) != sorted(r2):
        return None
    n = len(r1)
    counts: dict[int, int] = {}
    for x in r1:
        counts[x] = counts.get(x, 0) + 1
    if all(v == 1 for v in counts.values()):
        pos = {c: j for j, c in enumerate(r2)}
        f = [pos[c] for c in r1]
        if np.array_equal(A1, A2[np.ix_(f, f)]):
            return f
        return None
    # individualise a vertex from the smallest non-singleton cell
    target = min((c for c, k in counts.items() if k > 1), key=lambda c: (counts[c], c))
    v = r1.index(target)
    fresh = max(max(r1), max(r2)) + 1
    for w in (j for j in range(n) if r2[j] == target):
        n1 = list(r1)
        n2 = list(r2)
        n1[v] = fresh
        n2[w] = fresh
        f = _search(A1, A2, n1, n2)
        if f is not None:
            return f
    return None


def is_isomorphic(A1, A2, colours1=None, colours2=None) -> bool:
    return find_isomorphism(A1, A2, colours1, colours2) is not None
