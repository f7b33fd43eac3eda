# coding: utf-8
import numpy as np
import pytest

from superbound import *
from tests.util import *

GL21 = Grading(2, 1)
GL2 = Grading(2, 0)


@pytest.mark.parametrize("alpha", (1, 2))
def test_kdiag_reflection(alpha):
    K = kdiag_solution(GL21, alpha)
    report = check_reflection_trig(K, qparams(), samples=8, seed=SEED)
    assert report.passed()
    assert report.info("boundary")["alpha"] == alpha


def test_kdiag_validation():
    with pytest.raises(BoundaryError):
        KDiag(GL21, 0)
    with pytest.raises(BoundaryError):
        KDiag(GL21, 3)


def test_kdiag_custom_functions():
    K = KDiag(Grading(1, 1), 1, a=lambda z: 2 * z, b=lambda z: z + 1)
    assert np.allclose(K.evaluate(0.5).entries(), np.diag([1.0, 1.5]))


def test_m_boundary():
    qp = qparams()
    K = MBoundary(qp, GL21)
    assert K.kind == "M"
    assert K.evaluate(0.3).allclose(M_matrix(qp, GL21))


def test_asymptotic_boundary():
    K = kdiag_solution(GL21, 2)
    assert np.allclose(asymptotic_boundary(K, 1), np.diag([1, 1, 0]))
    assert np.allclose(asymptotic_boundary(K, -1), np.diag([0, 0, 1]))


def test_nondiag_validation():
    qp = qparams()
    with pytest.raises(BoundaryError):
        NonDiagBoundary(GL2, qp, "symmetric", "bosonic", 1, 0.5, 0.3)
    with pytest.raises(BoundaryError):
        NonDiagBoundary(GL2, qp, "distinguished", "bosonic", 2, 0.5, 0.3)
    with pytest.raises(BoundaryError):
        NonDiagBoundary(GL21, qp, "distinguished", "fermionic", 3, 0.5, 0.3)
    with pytest.raises(BoundaryError):
        NonDiagBoundary(GL2, qp, "distinguished", "bosonic", 1, 0.5, 0.3, c={3: 1.0})


def test_nondiag_structure():
    B = NonDiagBoundary(Grading(2, 2), qparams(), "distinguished", "fermionic", 3, 0.5, 0.3)
    assert B.pairs() == [(3, 4)]
    assert B.indices() == [3, 4]
    entries = B.evaluate(0.2).entries()
    assert entries[0, 1] == 0
    assert entries[2, 3] == pytest.approx(1j * np.sinh(0.4))
    assert entries[0, 0] == pytest.approx(entries[1, 1])
    fitted = B.with_products({3: 2.5})
    assert fitted.c() == {3: 1.0, 4: 2.5}
    assert fitted.products() == {3: 2.5}


def test_nondiag_bosonic_fit():
    qp = qparams()
    B = NonDiagBoundary(GL2, qp, "distinguished", "bosonic", 1, 0.7, 0.4)
    fit = solve_c_constraint(B, qp, seed=SEED)
    assert fit.consistent
    assert fit.message == "ok"
    report = check_nondiag_reflection(B, qp, samples=6, seed=SEED)
    assert report.passed()
    assert report.info("fit_message") == "ok"


def test_casimir_minus_ratio():
    qp = qparams()
    report = q_casimir_report(kdiag_solution(GL21, 2), 1, qp, seed=SEED)
    assert report.info("C-_ratio") == pytest.approx(-qp.power(-2), rel=1e-6)
    assert [v for label, v in report.residuals() if label.startswith("C-_closed_form")] != []


def test_q_symmetry_scan_structure():
    report = q_symmetry_scan(kdiag_solution(GL21, 1), 1, qparams(), samples=2, seed=SEED)
    assert report.info("sites") == 1
    assert report.info("boundary")["kind"] == "kdiag"


def test_q_crossing_form_squares_to_m():
    report = check_q_crossing_form(qparams(), symmetric(1, 2))
    assert report.passed()
    assert dict(report.residuals())["VtV_vs_M"] < 1e-10
    with pytest.raises(GradingError):
        check_q_crossing_form(qparams(), GL21)


@pytest.mark.parametrize("grading", (symmetric(2, 0), symmetric(0, 2)), ids=str)
def test_q_twisted_relations(grading):
    report = q_twisted(qparams(), grading, N=1, samples=2, seed=SEED)
    residuals = dict(report.residuals())
    assert residuals["VtV_vs_M"] < 1e-10
    assert residuals["exchange"] < 1e-9
    assert residuals["twisted_equation0"] < 1e-9
    assert residuals["twisted_equation1"] < 1e-9
    assert report.info("sites") == 1
    assert report.info("seed") == "V"


def test_q_twisted_not_a_symmetry():
    report = q_twisted(qparams(), symmetric(3, 0), N=2, samples=2, seed=SEED)
    assert report.passed()
    assert report.expectations()["not_an_exact_symmetry"]
    assert report.info("max_charge_commutator") > 1e-3
    assert len(report.table("charge_commutators")) == 9


def test_q_twisted_charges_shape():
    qp = qparams()
    charges = q_twisted_charges(qp, symmetric(2, 0), 1)
    assert charges.entries().shape == (4, 4)
    double_row = q_twisted_double_row(0.3, 1, qp, symmetric(2, 0))
    assert double_row.entries().shape == (4, 4)


def test_q_twisted_needs_symmetric():
    with pytest.raises(GradingError):
        q_twisted(qparams(), GL21)


def test_q_twisted_mixed_parity_inconclusive():
    report = q_twisted(qparams(), symmetric(1, 2), N=1, samples=2, seed=SEED)
    assert report.status() == "inconclusive"
    assert report.exit_code() == 2
    assert dict(report.residuals())["VtV_vs_M"] < 1e-10
    assert report.info("seed") is None
    assert "not_an_exact_symmetry" not in report.expectations()


@pytest.mark.parametrize("grading, sector, L", (
    (GL21, "bosonic", 1),
    (Grading(3, 1), "bosonic", 1),
    (Grading(1, 2), "fermionic", 2),
    (Grading(2, 2), "fermionic", 3),
), ids=str)
def test_nondiag_mixed_fit(grading, sector, L):
    qp = qparams()
    B = NonDiagBoundary(grading, qp, "distinguished", sector, L, 0.7, 0.4)
    assert B.mixed()
    fit = solve_c_constraint(B, qp, seed=SEED)
    assert fit.consistent
    report = check_nondiag_reflection(B, qp, samples=4, seed=SEED)
    assert report.passed()
    assert report.info("fit_message") == "ok"


def test_nondiag_mixed_structure():
    qp = qparams()
    B = NonDiagBoundary(GL21, qp, "distinguished", "bosonic", 1, 0.7, 0.4)
    assert B.pairs() == [(1, 2)]
    assert B.c() == {1: 1.0, 2: 0.0}
    entries = B.evaluate(0.2).entries()
    assert entries[2, 2] == pytest.approx(entries[1, 1])
    assert entries[0, 0] != pytest.approx(entries[1, 1])
    assert entries[1, 0] == 0
    assert not NonDiagBoundary(GL2, qp, "distinguished", "bosonic", 1, 0.7, 0.4).mixed()
    assert not NonDiagBoundary(Grading(0, 2), qp, "distinguished", "fermionic", 1, 0.7, 0.4).mixed()
    assert not NonDiagBoundary(symmetric(2, 2), qp, "symmetric", "bosonic", 1, 0.7, 0.4).mixed()


def test_nondiag_commuting_transfer():
    qp = qparams()
    B = NonDiagBoundary(GL2, qp, "distinguished", "bosonic", 1, 0.7, 0.4)
    fitted = B.with_products(solve_c_constraint(B, qp, seed=SEED).products)
    report = check_commuting_transfer_trig(fitted, 2, qp, samples=3, seed=SEED, tolerance=1e-8)
    assert report.passed()


def test_nondiag_inner_generators():
    qp = qparams()
    B = NonDiagBoundary(symmetric(2, 2), qp, "symmetric", "bosonic", 1, 0.7, 0.4)
    assert B.inner_generators() == {"e2", "f2", "qeps2", "qeps3"}
    narrow = NonDiagBoundary(symmetric(1, 2), qp, "symmetric", "bosonic", 1, 0.7, 0.4)
    assert narrow.inner_generators() == {"qeps2"}
    assert NonDiagBoundary(GL2, qp, "distinguished", "bosonic", 1, 0.7, 0.4).inner_generators() is None


def test_q_symmetry_scan_inner_block():
    B = NonDiagBoundary(symmetric(2, 2), qparams(), "symmetric", "bosonic", 1, 0.7, 0.4)
    report = q_symmetry_scan(B, 1, qparams(), samples=2, seed=SEED)
    assert report.expectations()["predicted_matches_inner_block"]


def test_q_symmetry_scan_kdiag_two_sites():
    report = q_symmetry_scan(kdiag_solution(GL21, 2), 2, qparams(), samples=2, seed=SEED)
    assert report.passed()
    assert report.info("observed_preserved") == ["e1", "f1", "qeps1", "qeps2", "qeps3"]


def test_q_symmetry_scan_left_boundary():
    qp = qparams()
    K = kdiag_solution(GL21, 2)
    default = q_symmetry_scan(K, 1, qp, samples=2, seed=SEED)
    explicit = q_symmetry_scan(K, 1, qp, samples=2, seed=SEED, K_plus=MBoundary(qp, GL21))
    assert explicit.info("boundary_plus")["kind"] == "M"
    assert default.info("boundary_plus") is None
    predicted = {label: row["predicted"] for label, row in default.table("generators").items()}
    assert {label: row["predicted"] for label, row in explicit.table("generators").items()} == predicted
    assert predicted["e1"] == "preserved"
    identity = q_symmetry_scan(K, 1, qp, samples=2, seed=SEED, K_plus=IdentityBoundary(GL21))
    assert identity.table("generators")["e1"]["predicted"] == "broken"


@pytest.mark.parametrize("grading, alpha, ratios", (
    (GL21, 2, {"+": lambda q: 1 / q, "-": lambda q: -q ** -2}),
    (Grading(2, 2), 2, {"+": lambda q: 1, "-": lambda q: -1}),
), ids=["gl21", "gl22"])
def test_q_casimir_closed_forms(grading, alpha, ratios):
    qp = qparams()
    report = q_casimir_report(kdiag_solution(grading, alpha), 1, qp, samples=2, seed=SEED)
    assert report.passed()
    for label, ratio in ratios.items():
        assert dict(report.residuals())["C{}_closed_form_N2".format(label)] < 1e-9
        assert report.info("C{}_ratio".format(label)) == pytest.approx(ratio(qp.q), rel=1e-6)


def test_q_casimir_edge_form():
    qp = qparams()
    report = q_casimir_report(kdiag_solution(GL21, 1), 1, qp, samples=2, seed=SEED)
    residuals = dict(report.residuals())
    assert residuals["C+_closed_form_N1"] < 1e-9
    assert residuals["C+_closed_form_N2"] < 1e-9
    assert residuals["C+_ratio_spread"] < 1e-9
    assert report.info("C+_ratio") == pytest.approx(1, rel=1e-6)
    assert "C-_closed_form_N1" not in residuals


def test_q_casimir_gl11_identity():
    qp = qparams()
    K = IdentityBoundary(Grading(1, 1))
    assert sorted(casimir_closed_forms(K, 1, qp)) == ["+", "-"]
    report = q_casimir_report(K, 1, qp, samples=2, seed=SEED)
    assert report.passed()
    assert report.info("C+_ratio") == pytest.approx(qp.q, rel=1e-6)
    assert report.info("C-_ratio") == pytest.approx(qp.q, rel=1e-6)


def test_casimir_closed_forms_keys():
    qp = qparams()
    assert sorted(casimir_closed_forms(kdiag_solution(GL21, 2), 1, qp)) == ["+", "-"]
    assert casimir_closed_forms(kdiag_solution(symmetric(2, 0), 1), 1, qp) == {}
