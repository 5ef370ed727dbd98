"""Exact linear algebra on integer matrices.

Characteristic polynomials use the Faddeev-LeVerrier trace recurrence.  The
recurrence is run modulo a set of word-sized primes with numpy and the
integer coefficients are recovered by Chinese remaindering against an a-priori
coefficient bound, so the result is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Sequence

import numpy as np

from .poly import ONE, Polynomial, RationalFunction

IntMatrix = list[list[int]]

#: Dimension above which exact work is refused unless the caller opts in.
EXACT_DIMENSION_LIMIT = 64


class DimensionError(ValueError):
    pass


class DimensionLimitError(DimensionError):
    """Raised when exact work would exceed the configured size cap."""


class SingularBlockError(ArithmeticError):
    pass


def as_int_matrix(M) -> IntMatrix:
    src = M.tolist() if isinstance(M, np.ndarray) else M
    rows = []
    for row in src:
        out = []
        for x in row:
            xi = int(x)
            if xi != x:
                raise ValueError(f"non-integer matrix entry {x!r}")
            out.append(xi)
        rows.append(out)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("matrix is not square")
    return rows


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


# --- primes and modular helpers --------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes_below(limit: int, count: int) -> tuple[int, ...]:
    out = []
    p = limit - 1
    while len(out) < count:
        if _is_prime(p):
            out.append(p)
        p -= 1
    return tuple(out)


def _coefficient_bound(rows: IntMatrix) -> int:
    # |c_k| <= C(n,k) * R^k by Hadamard on principal minors, R = max row 2-norm
    n = len(rows)
    r2 = max((sum(x * x for x in row) for row in rows), default=0)
    R = isqrt(r2)
    if R * R < r2:
        R += 1
    return max(comb(n, k) * R ** k for k in range(n + 1))


def _faddeev_leverrier_mod(A: np.ndarray, p: int) -> list[int]:
    n = A.shape[0]
    Am = A % p
    M = np.eye(n, dtype=np.int64)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        AM = (Am @ M) % p
        c = (-int(np.trace(AM) % p) * pow(k, -1, p)) % p
        coeffs[n - k] = c
        M = AM
        M[np.diag_indices(n)] = (M[np.diag_indices(n)] + c) % p
    return coeffs


def char_poly(M, max_dim: int | None = EXACT_DIMENSION_LIMIT) -> Polynomial:
    """``det(xI - M)`` with exact integer coefficients."""
    rows = as_int_matrix(M)
    n = len(rows)
    if max_dim is not None and n > max_dim:
        raise DimensionLimitError(
            f"exact characteristic polynomial capped at dimension {max_dim} (got {n}); "
            "use the numeric eigensolver or raise max_dim"
        )
    if n == 0:
        return ONE
    bound = 2 * _coefficient_bound(rows) + 1
    # keep n * (p-1)^2 inside int64 for the matmul accumulators
    limit = min(1 << 31, isqrt(((1 << 63) - 1) // n))
    A = np.array(rows, dtype=object)
    residues: list[list[int]] = []
    modulus = 1
    primes = []
    count = 8
    while modulus <= bound:
        for p in _primes_below(limit, count):
            if p in primes:
                continue
            if p <= n:
                raise DimensionError("matrix too large for modular trace recurrence")
            Ap = np.array((A % p).tolist(), dtype=np.int64)
            residues.append(_faddeev_leverrier_mod(Ap, p))
            primes.append(p)
            modulus *= p
            if modulus > bound:
                break
        count *= 2
    coeffs = []
    for k in range(n + 1):
        x = 0
        m = 1
        for p, res in zip(primes, residues):
            # incremental CRT
            t = ((res[k] - x) * pow(m, -1, p)) % p
            x += m * t
            m *= p
        if x > m // 2:
            x -= m
        coeffs.append(x)
    return Polynomial(coeffs)


def char_poly_bigint(M) -> Polynomial:
    """Plain big-integer Faddeev-LeVerrier; quartic cost, small inputs only."""
    rows = as_int_matrix(M)
    n = len(rows)
    Mk = identity(n)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        AM = [[sum(rows[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        tr = sum(AM[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("trace recurrence produced a non-integer")
        c = -tr // k
        coeffs[n - k] = c
        for i in range(n):
            AM[i][i] += c
        Mk = AM
    return Polynomial(coeffs)


def bareiss_det(M) -> int:
    """Fraction-free Gaussian elimination determinant."""
    a = [list(map(int, row)) for row in M]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# --- generic field elimination ---------------------------------------------

def field_det(rows: Sequence[Sequence]):
    """Determinant over any field whose elements support + - * / and truthiness."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    zero = a[0][0] * 0
    det = zero + 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        for i in range(k + 1, n):
            if not a[i][k]:
                continue
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] = a[i][j] - f * a[k][j]
    return det


def field_inverse(rows: Sequence[Sequence], one=1):
    n = len(rows)
    a = [list(r) + [one if i == j else one * 0 for j in range(n)] for i, r in enumerate(rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            raise SingularBlockError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = one / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [row[n:] for row in a]


def field_matmul(A, B):
    return [[sum((A[i][t] * B[t][j] for t in range(len(B))), A[i][0] * 0) for j in range(len(B[0]))]
            for i in range(len(A))]


# --- main functions and bordering -----------------------------------------

def main_function(M, u: Sequence[int], v: Sequence[int] | None = None) -> RationalFunction:
    """``v^t (xI - M)^{-1} u`` as a reduced rational function.

    Uses ``det(X + u v^t) = det X + v^t adj(X) u`` with ``X = xI - M``, so the
    numerator is ``charpoly(M - u v^t) - charpoly(M)``.
    """
    rows = as_int_matrix(M)
    v = u if v is None else v
    n = len(rows)
    if len(u) != n or len(v) != n:
        raise DimensionError(f"vectors must have length {n}")
    u = [int(x) for x in u]
    v = [int(x) for x in v]
    bordered = [[rows[i][j] - u[i] * v[j] for j in range(n)] for i in range(n)]
    p = char_poly(rows, max_dim=None)
    q = char_poly(bordered, max_dim=None)
    return RationalFunction(q - p, p)


def star_extend(M) -> IntMatrix:
    """Border ``M`` with a new last vertex adjacent only to vertex 0."""
    rows = as_int_matrix(M)
    n = len(rows)
    out = [row + [int(i == 0)] for i, row in enumerate(rows)]
    out.append([int(j == 0) for j in range(n + 1)])
    return out


def complete_adjacency(n: int) -> IntMatrix:
    return [[int(i != j) for j in range(n)] for i in range(n)]


def iterated_star(n: int, times: int | None = None) -> IntMatrix:
    """``K_n`` with ``times`` (default ``n``) pendant vertices on vertex 0."""
    M = complete_adjacency(n)
    for _ in range(n if times is None else times):
        M = star_extend(M)
    return M


def _lambda_minus(rows: IntMatrix) -> list[list[RationalFunction]]:
    n = len(rows)
    return [[RationalFunction(Polynomial([-rows[i][j], int(i == j)])) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SchurCheck:
    lhs: Polynomial
    rhs: Polynomial
    det_d: Polynomial
    complement_det: RationalFunction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def schur_det(M, split: int) -> SchurCheck:
    """Both sides of ``det(X) = det(D) det(A - B D^{-1} C)`` for ``X = xI - M``.

    ``split`` is the size of the leading block ``A``; ``D`` is the trailing
    block.
    """
    rows = as_int_matrix(M)
    n = len(rows)
    if not 0 <= split <= n:
        raise DimensionError(f"split {split} outside 0..{n}")
    X = _lambda_minus(rows)
    A = [r[:split] for r in X[:split]]
    B = [r[split:] for r in X[:split]]
    C = [r[:split] for r in X[split:]]
    D = [r[split:] for r in X[split:]]
    det_d = field_det(D) if D else RationalFunction(1)
    if not det_d:
        raise SingularBlockError("xI - D is singular")
    if split == 0:
        comp = RationalFunction(1)
    elif split == n:
        comp = field_det(A)
    else:
        Dinv = field_inverse(D, one=RationalFunction(1))
        BDC = field_matmul(field_matmul(B, Dinv), C)
        S = [[A[i][j] - BDC[i][j] for j in range(split)] for i in range(split)]
        comp = field_det(S)
    rhs = RationalFunction(det_d) * comp
    return SchurCheck(
        lhs=char_poly(rows, max_dim=None),
        rhs=rhs.to_polynomial(),
        det_d=RationalFunction(det_d).to_polynomial(),
        complement_det=RationalFunction(comp),
    )


def rational_det(M) -> Fraction:
    return Fraction(field_det([[Fraction(x) for x in row] for row in M]))


def rational_inverse(M) -> list[list[Fraction]]:
    return field_inverse([[Fraction(x) for x in row] for row in M], one=Fraction(1))
