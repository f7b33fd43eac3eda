# coding: utf-8
import cmath

import hypothesis
import hypothesis.strategies as st
import numpy as np
import pytest

from superbound import *
from superbound._qdeformed import GRADED, M_exponents, q_eps
from tests.util import *

GL21 = Grading(2, 1)


@pytest.mark.parametrize("grading", gradings(), ids=str)
def test_ybe_trig(grading):
    report = check_ybe_trig(qparams(), grading, samples=20, seed=SEED)
    assert report.passed()
    assert report.max_residual() < 1e-9


def test_rtt_trig():
    for grading in (Grading(1, 1), GL21):
        assert check_rtt_trig(qparams(), grading, 2, samples=4, seed=SEED).passed()


def test_root_of_unity_rejected():
    with pytest.raises(ValueError):
        QParams(2 * cmath.pi / 3)
    assert QParams(2 * cmath.pi / 3, allow_root_of_unity=True).q == pytest.approx(cmath.exp(2j * cmath.pi / 3))


def test_qparams_power():
    qp = qparams()
    assert qp.power(1) == pytest.approx(qp.q)
    assert qp.power(0.5) ** 2 == pytest.approx(qp.q)


def test_m_matrix():
    qp = qparams()
    q = qp.q
    assert np.allclose(M_matrix(qp, Grading(1, 1)).entries(), q * np.eye(2))
    assert np.allclose(M_matrix(qp, GL21).entries(), np.diag([q ** 2, 1, 1]))
    assert M_exponents(Grading(2, 0)) == [1, -1]


def test_cartan_matrix():
    a = cartan_matrix(GL21)
    assert a.tolist() == [[2, -1], [-1, 0]]
    a = cartan_matrix(Grading(1, 2))
    assert a.tolist() == [[0, 1], [1, -2]]
    assert cartan_matrix(Grading(3, 0))[0, 0] == 2


@pytest.mark.parametrize("grading", (GL21, Grading(1, 2), Grading(2, 2)), ids=str)
@pytest.mark.parametrize("N", (1, 2))
def test_uq_relations(grading, N):
    G = uq_fundamental(qparams(), grading, N, GRADED)
    report = check_uq_relations(G)
    assert report.passed()
    assert report.expectations()["zero_diagonal_at_m"]
    assert report.info("zero_diagonal_positions") == [grading.m]


def test_uq_relations_three_sites():
    assert check_uq_relations(uq_fundamental(qparams(), GL21, 3)).passed()


def test_generator_names():
    G = uq_fundamental(qparams(), GL21, 2)
    named = G.named()
    assert {"e1", "e2", "f1", "f2"} <= set(named)
    assert named["e1"].num_spaces() == 2
    assert G.single_named()["e1"].num_spaces() == 1


@pytest.mark.parametrize("grading", (GL21, Grading(1, 2), Grading(2, 2)), ids=str)
def test_coassociativity(grading):
    assert check_coassociativity(qparams(), grading).passed()


@pytest.mark.parametrize("grading", gradings(), ids=str)
def test_l_pm(grading):
    qp = qparams()
    report = check_L_pm(qp, grading, GRADED)
    assert report.passed()
    assert report.info("limit_plus_deviation") < 1e-10
    assert select_weight_convention(qp, grading) == GRADED


@pytest.mark.parametrize("grading", gradings(), ids=str)
def test_frt(grading):
    for N in (1, 2):
        report = check_frt(qparams(), grading, N)
        assert report.passed()
        assert [label for label, _ in report.residuals()] == ["++", "--", "+-"]


def test_r_pm_limits():
    qp = qparams()
    lam = 0.25 + 0.4j
    plus, minus = R_pm_limits(qp, GL21)
    lax = cmath.exp(lam) * plus.entries() + cmath.exp(-lam) * minus.entries()
    assert np.allclose(lax, 2 * R_trig(lam, qp, GL21).entries(), atol=1e-12)


@hypothesis.settings(max_examples=20, deadline=None)
@hypothesis.given(st.floats(-1, 1), st.floats(-2, 2))
def test_q_eps_group_like(x, y):
    qp = qparams()
    a = q_eps(qp, GL21, 2, x) @ q_eps(qp, GL21, 2, y)
    assert a.allclose(q_eps(qp, GL21, 2, x + y), 1e-12)


def test_monodromy_pm():
    qp = qparams()
    t_plus, t_minus = monodromy_pm(qp, GL21, 2)
    r_plus, r_minus = R_pm_limits(qp, GL21)
    expected = place(r_plus, (0, 2), 3) @ place(r_plus, (0, 1), 3)
    assert t_plus.allclose(expected)
    assert t_minus.num_spaces() == 3


@pytest.mark.parametrize("grading", (GL21, Grading(1, 2)), ids=str)
def test_monodromy_pm_matches_limits(grading):
    qp = qparams()
    r_plus, r_minus = R_pm_limits(qp, grading)
    t_plus, t_minus = monodromy_pm(qp, grading, 1)
    assert t_plus.allclose(r_plus, 1e-10)
    assert t_minus.allclose(-r_minus, 1e-10)
    _, t_minus = monodromy_pm(qp, grading, 2)
    assert t_minus.allclose(place(-r_minus, (0, 2), 3) @ place(-r_minus, (0, 1), 3), 1e-10)


def test_monodromy_pm_uses_generators(monkeypatch):
    def fail(qp, grading):
        raise GradingError("no weight convention")
    monkeypatch.setattr("superbound._qdeformed.select_weight_convention", fail)
    with pytest.raises(GradingError):
        monodromy_pm(qparams(), GL21, 1)
