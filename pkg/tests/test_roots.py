from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superspec.poly import X, Polynomial, poly_product
from superspec.roots import (
    count_real_roots,
    decimal_string,
    fujiwara_bound,
    integer_roots,
    isolate_real_roots,
    sturm_sequence,
)


def test_decimal_string_rounding():
    assert decimal_string(Fraction(1, 3), 4) == "0.3333"
    assert decimal_string(Fraction(-2, 3), 3) == "-0.667"
    assert decimal_string(Fraction(5, 2), 0) == "3"
    assert decimal_string(Fraction(-1, 10 ** 9), 3) == "0.000"


def test_sqrt_two():
    roots = isolate_real_roots(X ** 2 - 2, precision=8)
    assert [r.approx for r in roots] == ["-1.41421356", "1.41421356"]
    for r in roots:
        assert (r.lo ** 2 - 2) * (r.hi ** 2 - 2) <= 0
        assert r.hi - r.lo < Fraction(1, 10 ** 8)


def test_cubic_golden():
    roots = isolate_real_roots(X ** 3 - 3 * X ** 2 - 11 * X + 15, precision=5)
    assert [r.approx for r in roots] == ["-2.81114", "1.14307", "4.66807"]


def test_repeated_root_reported_once():
    roots = isolate_real_roots((X + 1) ** 2)
    assert len(roots) == 1
    assert roots[0].exact and roots[0].lo == -1 and roots[0].multiplicity == 2


def test_exact_rational_roots_hit_by_bisection():
    roots = isolate_real_roots((2 * X - 1) * (X - 3) * X)
    assert [(r.lo, r.exact) for r in roots] == [(0, True), (Fraction(1, 2), True), (3, True)]


def test_sturm_counts():
    p = (X - 1) * (X - 2) * (X ** 2 + 1)
    assert count_real_roots(p) == 2
    assert count_real_roots(p, 0, Fraction(3, 2)) == 1
    assert count_real_roots(p, 1, 2) == 1  # half-open (lo, hi]
    assert sturm_sequence(p)[0] == p
    with pytest.raises(ValueError):
        isolate_real_roots(Polynomial())


@given(st.sets(st.integers(-30, 30), min_size=1, max_size=6), st.integers(0, 3))
@settings(max_examples=60, derandomize=True, deadline=None)
def test_isolation_matches_numpy(int_roots, extra):
    p = poly_product((X - r, 1) for r in int_roots) * (X ** 2 - extra - 2)
    got = [float(r) for r in isolate_real_roots(p, 10)]
    want = np.unique(np.round(np.real(np.roots(list(reversed([float(c) for c in p.coefficients])))), 6))
    assert np.allclose(sorted(got), want, atol=1e-5)


def test_integer_roots_with_multiplicities():
    p = (X + 1) ** 2 * (X - 3) * (X ** 2 - 2 * X - 11)
    roots, rest = integer_roots(p)
    assert roots == {-1: 2, 3: 1}
    assert rest == X ** 2 - 2 * X - 11
    roots, rest = integer_roots(X ** 3)
    assert roots == {0: 3} and rest == Polynomial([1])


def test_quartic_divisor_scan():
    q = X ** 4 - 8 * X ** 3 - 6 * X ** 2 + 64 * X + 61
    roots, rest = integer_roots(q)
    assert roots == {-1: 1}
    approx = [float(r) for r in isolate_real_roots(rest)]
    assert np.allclose(approx, [-2.2034, 3.6798, 7.5236], atol=1e-4)


def test_fujiwara_bound_covers_roots():
    for p in (X ** 3 - 100 * X + 7, (X - 50) * (X + 49), X ** 5 - 1):
        b = fujiwara_bound(p)
        assert all(abs(float(r)) <= b for r in isolate_real_roots(p))
