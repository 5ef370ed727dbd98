from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

from superspec.families import FAMILIES, family_case, family_decomposition, family_graph, min_n
from superspec.graphs import complete_graph, empty_graph, hjoin_decompose
from superspec.groups import EquivalencePartition
from superspec.linalg import char_poly, schur_det
from superspec.numeric import symmetric_eigenvalues
from superspec.poly import X, Polynomial
from superspec.roots import count_real_roots
from superspec.spectra import (
    SpectrumReport,
    build_report,
    closed_form_char_poly,
    closed_form_factorization,
    closed_form_spectrum,
    integrality_report,
    quotient_matrix,
    spectrum_from_decomposition,
)


def exact_dict(report):
    return {int(v) if v.denominator == 1 else v: m for v, m in report.exact}


def test_quotient_matrix_examples():
    q = quotient_matrix(family_decomposition("escom_dihedral", 3))
    B = np.array(q.matrix)
    assert sorted(np.diag(B)) == [0, 0, 0, 0, 1]
    # parts in ascending representative order: e, {a, a^2}, b, ab, a^2b
    assert B[0].tolist() == [0, 2, 1, 1, 1]
    assert sorted(B[0].tolist()) == [0, 1, 1, 1, 2]
    single = hjoin_decompose(complete_graph(5), EquivalencePartition.from_blocks([range(5)]))
    assert quotient_matrix(single).matrix == ((4,),)


def test_cscom_d10_quotient_and_schur_split():
    q = quotient_matrix(family_decomposition("cscom_dihedral", 5))
    assert sorted(q.sizes) == [1, 2, 2, 5]
    p = char_poly(q.matrix)
    assert p == (X + 1) * (X ** 3 - 7 * X ** 2 + 3 * X + 31)
    # the K_5 part is the last part; peel it off as the trailing block
    assert q.sizes[-1] == 5
    assert schur_det(q.matrix, 3).holds


def test_symmetric_quotient_is_similar():
    for family in FAMILIES:
        q = quotient_matrix(family_decomposition(family, 7))
        S = q.symmetric()
        assert np.allclose(S, S.T)
        p = char_poly(q.matrix)
        assert count_real_roots(p) == len(set(np.round(np.linalg.eigvalsh(S), 9)))
        assert np.allclose(np.sort(np.linalg.eigvalsh(S)), np.sort(np.linalg.eigvals(np.array(q.matrix, float)).real))


def test_spectrum_from_decomposition_examples():
    single = hjoin_decompose(complete_graph(4), EquivalencePartition.from_blocks([range(4)]))
    report = spectrum_from_decomposition(single)
    assert exact_dict(report) == {-1: 3, 3: 1} and report.factors == ()
    report = spectrum_from_decomposition(family_decomposition("escom_dihedral", 3))
    assert exact_dict(report) == {-1: 1, 0: 2}
    assert [f.polynomial for f in report.factors] == [X ** 3 - X ** 2 - 5 * X + 3]
    report = spectrum_from_decomposition(family_decomposition("cscom_dihedral", 6))
    assert exact_dict(report) == {-1: 9}
    assert report.factors[0].polynomial.degree == 3


def test_closed_form_examples():
    r = closed_form_spectrum("escom_dihedral", 3)
    assert exact_dict(r) == {0: 2, -1: 1}
    assert r.factors[0].polynomial == X ** 3 - X ** 2 - 5 * X + 3
    r = closed_form_spectrum("escom_dihedral", 6)
    assert exact_dict(r) == {1: 2, -1: 7}
    assert [f"{float(x.approx):.5f}" for x in r.factors[0].roots] == ["-3.17226", "2.14399", "6.02827"]
    r = closed_form_spectrum("cscom_dihedral", 5)
    assert exact_dict(r) == {-1: 7}
    assert [f"{float(x.approx):.5f}" for x in r.factors[0].roots] == ["-1.72119", "3.35861", "5.36258"]


def test_rational_roots_are_absorbed_into_the_exact_part():
    # the stated cubic x^3 - 3x^2 - 9x + 11 has the root 1
    exact, factors = closed_form_factorization("cscom_dicyclic", 2)
    assert factors[0][0] == X ** 3 - 3 * X ** 2 - 9 * X + 11
    assert exact == {Fraction(-1): 4, Fraction(1): 1}
    r = closed_form_spectrum("cscom_dicyclic", 2)
    assert exact_dict(r) == {-1: 4, 1: 2}
    assert r.factors[0].polynomial == X ** 2 - 2 * X - 11
    assert r.char_poly() == closed_form_char_poly("cscom_dicyclic", 2)


def test_quartic_case_absorbs_minus_one():
    for n in (6, 10, 14):
        _, factors = closed_form_factorization("cscom_dihedral", n)
        assert factors[0][0].degree == 4 and factors[0][0](-1) == 0
    r = closed_form_spectrum("cscom_dihedral", 6)
    assert exact_dict(r) == {-1: 9}


def test_report_invariants_and_json():
    r = closed_form_spectrum("escom_dicyclic", 3)
    assert sum(m for _, m in r.exact) + sum(f.polynomial.degree * f.multiplicity for f in r.factors) == 12
    d = json.loads(r.to_json())
    assert set(d) == {"dimension", "exact", "factors", "integral", "provenance"}
    assert d["dimension"] == 12 and d["provenance"] == "closed_form" and d["integral"] is False
    f = d["factors"][0]
    assert Polynomial.from_strings(f["coefficients"]) == r.factors[0].polynomial
    assert all(Fraction(x["lo"]) <= Fraction(x["hi"]) for x in f["roots"])
    with pytest.raises(ValueError):
        SpectrumReport(((Fraction(1), 2),), (), 3, "closed_form")


def test_build_report_rejects_non_real_factor():
    with pytest.raises(ValueError):
        build_report({}, [(X ** 2 + 1, 1)], 2, "quotient")


def test_integrality_examples():
    k5 = spectrum_from_decomposition(hjoin_decompose(complete_graph(5), EquivalencePartition.from_blocks([range(5)])))
    assert integrality_report(k5).integral
    res = integrality_report(closed_form_spectrum("escom_dihedral", 3))
    assert not res.integral
    assert [r.approx[:6] for _, r in res.witnesses] == ["-2.086", "0.5719", "2.5141"]
    assert not integrality_report(closed_form_spectrum("cscom_dihedral", 6)).integral
    empty = spectrum_from_decomposition(hjoin_decompose(empty_graph(3), EquivalencePartition.from_blocks([[0], [1], [2]])))
    assert integrality_report(empty).integral and exact_dict(empty) == {0: 3}


@pytest.mark.parametrize("family", FAMILIES)
def test_three_pipelines_agree(family):
    for n in range(min_n(family), 15):
        closed = closed_form_spectrum(family, n)
        quotient = spectrum_from_decomposition(family_decomposition(family, n))
        assert closed.same_spectrum(quotient), (family, n)
        numeric = symmetric_eigenvalues(family_graph(family, n).adjacency)
        assert np.allclose(closed.values(), numeric.eigenvalues, atol=1e-9)


def test_parity_dispatch_is_total():
    seen = {f: set() for f in FAMILIES}
    for family in FAMILIES:
        for n in range(min_n(family), 40):
            seen[family].add(family_case(family, n))
            closed_form_factorization(family, n)
    assert seen["cscom_dihedral"] == {"n odd", "n = 0 mod 4", "n = 2 mod 4"}
    assert len(seen["escom_dicyclic"]) == 1
