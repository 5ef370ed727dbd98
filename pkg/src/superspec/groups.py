"""Finite groups given by Cayley tables.

Element 0 is always the identity.  The dihedral and dicyclic constructors list
the powers of ``a`` first and then the elements ``a^i b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

#: Associativity is checked on load up to this order unless forced.
ASSOCIATIVITY_CHECK_LIMIT = 512


class ParameterRangeError(ValueError):
    pass


class CayleyParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class GroupValidationError(ValueError):
    pass


class LatinSquareError(GroupValidationError):
    pass


class IdentityError(GroupValidationError):
    pass


class AssociativityError(GroupValidationError):
    pass


class InverseError(GroupValidationError):
    pass


def _power_name(k: int) -> str:
    if k == 0:
        return "e"
    return "a" if k == 1 else f"a^{k}"


def _coset_name(k: int) -> str:
    if k == 0:
        return "b"
    return "ab" if k == 1 else f"a^{k}b"


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    names: tuple[str, ...]
    label: str = ""
    _inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != t.shape[0]:
            raise ValueError("need one name per element")
        inv = np.argmin(t, axis=1)  # column holding the identity
        inv.setflags(write=False)
        object.__setattr__(self, "_inverse", inv)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity_index(self) -> int:
        return 0

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inverse(self, i: int) -> int:
        return int(self._inverse[i])

    def inverses(self) -> np.ndarray:
        return self._inverse

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.names, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label or 'order ' + str(self.order)})"

    def to_text(self, with_names: bool = True) -> str:
        lines = [str(self.order)]
        lines.extend(" ".join(str(x) for x in row) for row in self.table.tolist())
        if with_names:
            lines.append("names: " + ",".join(self.names))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class EquivalencePartition:
    """Blocks of element indices, each sorted, ordered by smallest member."""

    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @classmethod
    def from_blocks(cls, blocks, size: int | None = None) -> EquivalencePartition:
        bl = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else -1)
        if any(not b for b in bl):
            raise ValueError("empty block")
        n = sum(len(b) for b in bl) if size is None else size
        owner = [-1] * n
        for k, b in enumerate(bl):
            for x in b:
                if not 0 <= x < n or owner[x] != -1:
                    raise ValueError(f"element {x} is out of range or repeated")
                owner[x] = k
        if -1 in owner:
            raise ValueError("blocks do not cover every element")
        return cls(tuple(bl), tuple(owner))

    @classmethod
    def from_labels(cls, labels: Sequence) -> EquivalencePartition:
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls.from_blocks(groups.values(), len(labels))

    @property
    def size(self) -> int:
        return len(self.block_of)

    def __len__(self) -> int:
        return len(self.blocks)

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


# --- constructions -----------------------------------------------------------

def dihedral(n: int) -> FiniteGroup:
    """D_2n: index ``i < n`` is ``a^i`` and index ``n + i`` is ``a^i b``."""
    if n < 3:
        raise ParameterRangeError(f"dihedral group needs n >= 3, got {n}")
    r = np.arange(n)
    t = np.empty((2 * n, 2 * n), dtype=np.int64)
    # a^i a^j = a^{i+j}; a^i (a^j b) = a^{i+j} b; (a^i b) a^j = a^{i-j} b; (a^i b)(a^j b) = a^{i-j}
    t[:n, :n] = (r[:, None] + r[None, :]) % n
    t[:n, n:] = n + (r[:, None] + r[None, :]) % n
    t[n:, :n] = n + (r[:, None] - r[None, :]) % n
    t[n:, n:] = (r[:, None] - r[None, :]) % n
    names = [_power_name(k) for k in range(n)] + [_coset_name(k) for k in range(n)]
    return FiniteGroup(t, tuple(names), label=f"D_{2 * n}")


def dicyclic(n: int) -> FiniteGroup:
    """Q_4n: index ``i < 2n`` is ``a^i``, index ``2n + i`` is ``a^i b``; ``b^2 = a^n``."""
    if n < 2:
        raise ParameterRangeError(f"dicyclic group needs n >= 2, got {n}")
    m = 2 * n
    r = np.arange(m)
    t = np.empty((2 * m, 2 * m), dtype=np.int64)
    t[:m, :m] = (r[:, None] + r[None, :]) % m
    t[:m, m:] = m + (r[:, None] + r[None, :]) % m
    t[m:, :m] = m + (r[:, None] - r[None, :]) % m
    t[m:, m:] = (r[:, None] - r[None, :] + n) % m
    names = [_power_name(k) for k in range(m)] + [_coset_name(k) for k in range(m)]
    return FiniteGroup(t, tuple(names), label=f"Q_{4 * n}")


# --- validation and loading ------------------------------------------------

def validate_table(table: np.ndarray, check_associativity: bool | None = None) -> None:
    t = np.asarray(table)
    n = t.shape[0]
    if t.shape != (n, n):
        raise LatinSquareError("table is not square")
    if t.min(initial=0) < 0 or t.max(initial=0) >= n:
        raise LatinSquareError("table entries out of range")
    want = np.arange(n)
    srt_rows = np.sort(t, axis=1)
    bad = np.nonzero((srt_rows != want).any(axis=1))[0]
    if bad.size:
        raise LatinSquareError(f"row {int(bad[0])} is not a permutation")
    srt_cols = np.sort(t, axis=0)
    bad = np.nonzero((srt_cols != want[:, None]).any(axis=0))[0]
    if bad.size:
        raise LatinSquareError(f"column {int(bad[0])} is not a permutation")
    if not (np.array_equal(t[0], want) and np.array_equal(t[:, 0], want)):
        raise IdentityError("element 0 is not a two-sided identity")
    left = np.argmin(t, axis=1)
    if not np.array_equal(t[want, left], np.zeros(n, dtype=t.dtype)) or not np.array_equal(
        t[left, want], np.zeros(n, dtype=t.dtype)
    ):
        raise InverseError("some element lacks a two-sided inverse")
    if check_associativity is None:
        check_associativity = n <= ASSOCIATIVITY_CHECK_LIMIT
    if check_associativity:
        for i in range(n):
            # (i j) k == i (j k) for all j, k
            lhs = t[t[i]]
            rhs = t[i][t]
            if not np.array_equal(lhs, rhs):
                j, k = map(int, np.argwhere(lhs != rhs)[0])
                raise AssociativityError(f"({i}*{j})*{k} != {i}*({j}*{k})")


def group_from_table(table, names: Sequence[str] | None = None, check_associativity: bool | None = None,
                     label: str = "") -> FiniteGroup:
    """Validate a table, moving the identity to index 0 if necessary."""
    t = np.array(table, dtype=np.int64)
    n = t.shape[0] if t.ndim == 2 else 0
    if n == 0 or t.shape != (n, n):
        raise LatinSquareError("table must be a non-empty square array")
    if t.min() < 0 or t.max() >= n:
        raise LatinSquareError("table entries out of range")
    names = list(names) if names is not None else [f"g{i}" for i in range(n)]
    if len(names) != n:
        raise ValueError(f"expected {n} names, got {len(names)}")
    idx = np.arange(n)
    ids = [e for e in range(n) if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx)]
    if not ids:
        validate_table(t, check_associativity=False)  # reports a Latin-square failure first
        raise IdentityError("table has no two-sided identity")
    e = ids[0]
    if e != 0:
        perm = idx.copy()
        perm[0], perm[e] = e, 0  # new index -> old index (a transposition)
        t = perm[t[np.ix_(perm, perm)]]
        names[0], names[e] = names[e], names[0]
    validate_table(t, check_associativity)
    return FiniteGroup(t, tuple(names), label=label)


def load_cayley_table(text: str, check_associativity: bool | None = None) -> FiniteGroup:
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    numbered = [(k + 1, ln.strip()) for k, ln in enumerate(lines)]
    numbered = [(k, ln) for k, ln in numbered if ln]
    if not numbered:
        raise CayleyParseError("empty input", 1)
    lineno, first = numbered[0]
    try:
        n = int(first)
    except ValueError:
        raise CayleyParseError(f"expected the group order, got {first!r}", lineno) from None
    if n < 1:
        raise CayleyParseError("order must be positive", lineno)
    rows = []
    names = None
    for lineno, ln in numbered[1:]:
        if ln.lower().startswith("names:"):
            if names is not None:
                raise CayleyParseError("duplicate names line", lineno)
            names = [s.strip() for s in ln.split(":", 1)[1].split(",")]
            if len(names) != n:
                raise CayleyParseError(f"expected {n} names, got {len(names)}", lineno)
            continue
        if names is not None:
            raise CayleyParseError("table row after names line", lineno)
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError:
            raise CayleyParseError(f"non-integer entry in {ln!r}", lineno) from None
        if len(row) != n:
            raise CayleyParseError(f"expected {n} entries, got {len(row)}", lineno)
        rows.append(row)
        if len(rows) > n:
            raise CayleyParseError(f"more than {n} table rows", lineno)
    if len(rows) < n:
        raise CayleyParseError(f"expected {n} table rows, got {len(rows)}", numbered[-1][0])
    return group_from_table(rows, names, check_associativity)


def dump_cayley_table(G: FiniteGroup, with_names: bool = True) -> str:
    return G.to_text(with_names)


# --- structure -------------------------------------------------------------

def element_order(G: FiniteGroup, g: int) -> int:
    if not 0 <= g < G.order:
        raise IndexError(f"element index {g} outside 0..{G.order - 1}")
    k, x = 1, g
    while x != 0:
        x = G.mul(x, g)
        k += 1
    return k


def element_orders(G: FiniteGroup) -> list[int]:
    return [element_order(G, g) for g in range(G.order)]


def conjugacy_classes(G: FiniteGroup) -> EquivalencePartition:
    t = G.table
    inv = G.inverses()
    n = G.order
    owner = [-1] * n
    blocks = []
    for x in range(n):
        if owner[x] != -1:
            continue
        # g x g^{-1} over all g
        orbit = sorted(set(t[t[:, x], inv].tolist()))
        for y in orbit:
            owner[y] = len(blocks)
        blocks.append(orbit)
    return EquivalencePartition.from_blocks(blocks, n)


def center(G: FiniteGroup) -> list[int]:
    t = G.table
    return [int(i) for i in np.nonzero((t == t.T).all(axis=1))[0]]
