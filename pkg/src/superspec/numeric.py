"""Floating-point cross-check: Jacobi eigenvalues and spectrum comparison.

The eigensolver sweeps the off-diagonal pairs in round-robin order, so each
round applies ``n/2`` disjoint rotations at once.  Disjoint rotations
commute, which makes a round equivalent to applying them one after another.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-11
MAX_SWEEPS = 100


class AsymmetricMatrixError(ValueError):
    pass


class ConvergenceError(ArithmeticError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


def format_real(x: float, precision: int) -> str:
    """Fixed-point text without a spurious sign on values that round to zero."""
    s = f"{x:.{precision}f}"
    return s[1:] if s.startswith("-") and not s.strip("-0.") else s


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: tuple[float, ...]
    iterations: int
    off_diagonal_residual: float

    def to_dict(self, precision: int = 12) -> dict:
        return {
            "dimension": len(self.eigenvalues),
            "eigenvalues": [format_real(x, precision) for x in self.eigenvalues],
            "iterations": self.iterations,
            "off_diagonal_residual": self.off_diagonal_residual,
            "provenance": "numeric",
        }


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            P, Q = zip(*pairs)
            rounds.append((np.array(P), np.array(Q)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _off_norm(A: np.ndarray) -> float:
    # summing the off-diagonal directly; total minus diagonal cancels badly
    off = A[~np.eye(A.shape[0], dtype=bool)]
    return float(np.sqrt(np.dot(off, off)))


def symmetric_eigenvalues(M, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenResult:
    """Eigenvalues of a real symmetric matrix by Jacobi rotations.

    Stops once the off-diagonal Frobenius norm drops below ``tol``; the
    eigenvalue error is bounded by that norm.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise ValueError("need a non-empty square matrix")
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12):
        raise AsymmetricMatrixError("matrix is not symmetric")
    A = (A + A.T) / 2
    n = A.shape[0]
    rounds = _round_robin(n)
    sweeps = 0
    off = _off_norm(A)
    while off >= tol:
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"no convergence after {max_sweeps} sweeps", off)
        for P, Q in rounds:
            _rotate(A, P, Q)
        sweeps += 1
        off = _off_norm(A)
    return EigenResult(tuple(sorted(np.diag(A).tolist())), sweeps, off)


def _rotate(A: np.ndarray, P: np.ndarray, Q: np.ndarray) -> None:
    """Annihilate ``A[P[k], Q[k]]`` for every disjoint pair at once, in place."""
    apq = A[P, Q]
    app = A[P, P]
    aqq = A[Q, Q]
    active = apq != 0.0
    with np.errstate(over="ignore"):
        theta = np.where(active, (aqq - app) / (2.0 * np.where(active, apq, 1.0)), 0.0)
        # for huge theta, t ~ 1/(2 theta) and theta**2 may overflow to inf, giving t = 0
        t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
    t = np.where(active & (theta == 0.0), 1.0, np.where(active, t, 0.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    rp = A[P, :]
    rq = A[Q, :]
    A[P, :] = c[:, None] * rp - s[:, None] * rq
    A[Q, :] = s[:, None] * rp + c[:, None] * rq
    cp = A[:, P]
    cq = A[:, Q]
    A[:, P] = cp * c[None, :] - cq * s[None, :]
    A[:, Q] = cp * s[None, :] + cq * c[None, :]
    A[P, Q] = 0.0
    A[Q, P] = 0.0


@dataclass(frozen=True)
class Comparison:
    match: bool
    max_gap: float
    pairing: tuple[tuple[float, float], ...]


def compare_spectra(exact, numeric: EigenResult, tol: float = 1e-8) -> Comparison:
    """Pair sorted exact eigenvalues with sorted numeric ones.

    ``exact`` is a spectrum report (anything with ``values()`` and
    ``dimension``) or a plain sequence of reals.
    """
    values = sorted(exact.values()) if hasattr(exact, "values") else sorted(float(x) for x in exact)
    if len(values) != len(numeric.eigenvalues):
        raise ValueError(
            f"dimension mismatch: {len(values)} exact vs {len(numeric.eigenvalues)} numeric eigenvalues"
        )
    pairing = tuple(zip(values, numeric.eigenvalues))
    gap = max((abs(a - b) for a, b in pairing), default=0.0)
    return Comparison(gap <= tol, gap, pairing)
