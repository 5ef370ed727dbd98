"""Exact adjacency spectra of H-joins of complete graphs.

A spectrum is reported canonically: every rational eigenvalue sits in the
exact part, and what remains is a list of monic squarefree residual factors
free of rational roots, each with isolated real roots.  The closed-form and
quotient pipelines both pass through :func:`build_report`, so equal spectra
give equal reports.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .families import check_n, normalize_family
from .graphs import HJoinDecomposition
from .linalg import EXACT_DIMENSION_LIMIT, char_poly
from .poly import Polynomial, poly_product, squarefree_decomposition
from .roots import RealRoot, integer_roots, isolate_real_roots

DEFAULT_PRECISION = 12
PROVENANCES = ("closed_form", "quotient", "numeric")


@dataclass(frozen=True)
class ResidualFactor:
    polynomial: Polynomial
    multiplicity: int
    roots: tuple[RealRoot, ...]

    def to_dict(self) -> dict:
        return {
            "coefficients": self.polynomial.to_strings(),
            "multiplicity": self.multiplicity,
            "roots": [r.to_dict() for r in self.roots],
        }


@dataclass(frozen=True)
class SpectrumReport:
    exact: tuple[tuple[Fraction, int], ...]
    factors: tuple[ResidualFactor, ...]
    dimension: int
    provenance: str
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        total = sum(m for _, m in self.exact) + sum(f.polynomial.degree * f.multiplicity for f in self.factors)
        if total != self.dimension:
            raise ValueError(f"multiplicities account for {total} eigenvalues, expected {self.dimension}")

    def same_spectrum(self, other: SpectrumReport) -> bool:
        """Equality of exact parts and residual factors, ignoring provenance."""
        return (
            self.dimension == other.dimension
            and self.exact == other.exact
            and [(f.polynomial, f.multiplicity) for f in self.factors]
            == [(f.polynomial, f.multiplicity) for f in other.factors]
        )

    def multiplicity(self, value) -> int:
        v = Fraction(value)
        return next((m for x, m in self.exact if x == v), 0)

    def residual_polynomial(self) -> Polynomial:
        return poly_product((f.polynomial, f.multiplicity) for f in self.factors)

    def char_poly(self) -> Polynomial:
        lin = poly_product((Polynomial.linear(v), m) for v, m in self.exact)
        return lin * self.residual_polynomial()

    def values(self) -> list[float]:
        """All eigenvalues with multiplicity, ascending, residual roots as decimals."""
        out: list[float] = []
        for v, m in self.exact:
            out.extend([float(v)] * m)
        for f in self.factors:
            for r in f.roots:
                out.extend([float(r.approx)] * f.multiplicity)
        return sorted(out)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "exact": [{"value": str(v), "multiplicity": m} for v, m in self.exact],
            "factors": [f.to_dict() for f in self.factors],
            "integral": integrality_report(self).integral,
            "provenance": self.provenance,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def build_report(exact: dict, polynomials: Iterable[tuple[Polynomial, int]], dimension: int,
                 provenance: str, precision: int = DEFAULT_PRECISION) -> SpectrumReport:
    """Canonical report from known eigenvalues and monic integral factors."""
    ex: dict[Fraction, int] = {}
    for v, m in exact.items():
        if m:
            ex[Fraction(v)] = ex.get(Fraction(v), 0) + m
    rest = Polynomial([1])
    for p, m in polynomials:
        if m == 0:
            continue
        p = p.monic()
        if not p.is_integral():
            raise ValueError(f"residual factor {p} is not a monic integral polynomial")
        roots, r = integer_roots(p)
        for v, k in roots.items():
            ex[Fraction(v)] = ex.get(Fraction(v), 0) + k * m
        rest = rest * r ** m
    factors = []
    if rest.degree > 0:
        for f, m in squarefree_decomposition(rest):
            roots = tuple(isolate_real_roots(f, precision))
            if len(roots) != f.degree:
                raise ValueError(f"factor {f} has non-real roots; not a symmetric spectrum")
            factors.append(ResidualFactor(f, m, roots))
    factors.sort(key=lambda f: (f.polynomial.degree, f.polynomial.coefficients))
    return SpectrumReport(tuple(sorted(ex.items())), tuple(factors), dimension, provenance, precision)


# --- quotient pipeline ------------------------------------------------------

@dataclass(frozen=True)
class QuotientMatrix:
    """Integer matrix diagonally similar to the symmetric quotient.

    ``B[i][i] = n_i - 1`` and ``B[i][j] = n_j`` when parts ``i`` and ``j`` are
    joined; ``D^{-1/2} S D^{1/2} = B`` with ``D = diag(n_i)`` and ``S`` the
    symmetric quotient carrying ``sqrt(n_i n_j)``.
    """

    matrix: tuple[tuple[int, ...], ...]
    sizes: tuple[int, ...]

    def symmetric(self) -> np.ndarray:
        n = np.array(self.sizes, dtype=float)
        S = np.array(self.matrix, dtype=float)
        rho = S / n[None, :]
        out = rho * np.sqrt(np.outer(n, n))
        np.fill_diagonal(out, n - 1)
        return out


def quotient_matrix(decomp: HJoinDecomposition) -> QuotientMatrix:
    S = decomp.skeleton.adjacency
    sizes = decomp.part_sizes
    k = len(sizes)
    B = tuple(
        tuple(sizes[i] - 1 if i == j else (sizes[j] if S[i, j] else 0) for j in range(k))
        for i in range(k)
    )
    return QuotientMatrix(B, tuple(sizes))


def spectrum_from_decomposition(decomp: HJoinDecomposition, precision: int = DEFAULT_PRECISION,
                                max_dim: int | None = EXACT_DIMENSION_LIMIT) -> SpectrumReport:
    Q = quotient_matrix(decomp)
    minus_one = sum(s - 1 for s in decomp.part_sizes)
    p = char_poly(Q.matrix, max_dim=max_dim)
    return build_report({-1: minus_one}, [(p, 1)], decomp.n_vertices, "quotient", precision)


# --- closed forms -------------------------------------------------------------

def _P(*coeffs) -> Polynomial:
    # highest degree first, as the formulas are written
    return Polynomial(list(reversed([Fraction(c) for c in coeffs])))


def closed_form_factorization(family: str, n: int) -> tuple[dict[Fraction, int], list[tuple[Polynomial, int]]]:
    """Eigenvalue multiplicities and factor polynomial stated for the family.

    Coefficients are evaluated from their general formulas in ``n``; nothing
    is tabulated per instance.
    """
    family = normalize_family(family)
    check_n(family, n)
    h = Fraction(n, 2)
    if family == "escom_dihedral":
        if n % 2:
            return ({Fraction(0): n - 1, Fraction(-1): n - 2},
                    [(_P(1, -(n - 2), -(2 * n - 1), n * (n - 2)), 1)])
        return ({Fraction(1): n // 2 - 1, Fraction(-1): 3 * n // 2 - 2},
                [(_P(1, -(n - 1), -(2 * n + 1), 2 * n * n - 5 * n - 1), 1)])
    if family == "escom_dicyclic":
        return ({Fraction(1): n - 1, Fraction(-1): 3 * n - 2},
                [(_P(1, -(2 * n - 1), -(4 * n + 1), 8 * n * n - 10 * n - 1), 1)])
    if family == "cscom_dihedral":
        if n % 2:
            return ({Fraction(-1): 2 * n - 3},
                    [(_P(1, 3 - 2 * n, n * n - 5 * n + 3, 2 * n * n - 4 * n + 1), 1)])
        if n % 4 == 0:
            return ({Fraction(-1): 2 * n - 4, h - 1: 1},
                    [(_P(1, 3 - 3 * h, h * n - 5 * n + 3, 5 * h * n - 15 * h + 1), 1)])
        return ({Fraction(-1): 2 * n - 4},
                [(_P(1, 4 - 2 * n, n * n - 8 * n + 6, 4 * n * n - 14 * n + 4, 3 * n * n - 8 * n + 1), 1)])
    if n % 2 == 0:
        return ({Fraction(-1): 4 * n - 4, Fraction(n - 1): 1},
                [(_P(1, 3 - 3 * n, 2 * n * n - 10 * n + 3, 10 * n * n - 15 * n + 1), 1)])
    return ({Fraction(-1): 4 * n - 4},
            [(_P(1, 4 - 4 * n, 4 * n * n - 16 * n + 6, 16 * n * n - 28 * n + 4, 12 * n * n - 16 * n + 1), 1)])


def family_dimension(family: str, n: int) -> int:
    return 2 * n if normalize_family(family).endswith("dihedral") else 4 * n


def closed_form_char_poly(family: str, n: int) -> Polynomial:
    exact, factors = closed_form_factorization(family, n)
    lin = poly_product((Polynomial.linear(v), m) for v, m in exact.items())
    return lin * poly_product(factors)


def closed_form_spectrum(family: str, n: int, precision: int = DEFAULT_PRECISION) -> SpectrumReport:
    exact, factors = closed_form_factorization(family, n)
    return build_report(exact, factors, family_dimension(family, n), "closed_form", precision)


# --- integrality ------------------------------------------------------------

@dataclass(frozen=True)
class IntegralityResult:
    integral: bool
    witnesses: tuple[tuple[Polynomial | None, RealRoot], ...]


def integrality_report(report: SpectrumReport) -> IntegralityResult:
    """Integral iff every eigenvalue is an integer.

    Residual factors carry no rational roots, so each of their real roots is
    a non-integer witness.
    """
    witnesses: list = []
    for v, _ in report.exact:
        if v.denominator != 1:
            witnesses.append((None, RealRoot(v, v, str(v))))
    for f in report.factors:
        for r in f.roots:
            if not (r.exact and r.lo.denominator == 1):
                witnesses.append((f.polynomial, r))
    return IntegralityResult(not witnesses, tuple(witnesses))
