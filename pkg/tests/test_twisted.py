# coding: utf-8
import pytest

from superbound import *
from superbound._twisted import span_closure, twisted_generators
from tests.util import *


@pytest.mark.parametrize("m, n, dimension", [(1, 2, 5), (2, 2, 8)])
def test_osp_dimension(m, n, dimension):
    assert osp_dimension(symmetric(m, n)) == dimension


@pytest.mark.parametrize("m, n", [(1, 2), (2, 2)])
def test_check_twisted(m, n):
    grading = symmetric(m, n)
    report = check_twisted(grading, 0, samples=10, seed=SEED)
    assert report.passed()
    assert report.info("osp_dimension") == osp_dimension(grading)
    assert report.expectations() == {"osp_dimension": True}


def test_twisted_needs_symmetric_grading():
    with pytest.raises(GradingError):
        check_twisted(Grading(1, 2), 0, samples=1, seed=SEED)
    with pytest.raises(GradingError):
        twisted_objects(1, Grading(2, 1))


def test_twisted_residual_at_k_level():
    grading = symmetric(1, 2)
    assert twisted_residual(grading, 0.3 + 0.8j, -1.1 + 0.4j) < 1e-10


def test_span_closure():
    grading = Grading(1, 1)
    # e_00 and e_11 span a commutative algebra
    rank, outside = span_closure([unit(grading, 0, 0), unit(grading, 1, 1)])
    assert rank == 2
    assert outside < 1e-12
    # e_01 and e_10 do not close: their anticommutator is 𝕀
    rank, outside = span_closure([unit(grading, 0, 1), unit(grading, 1, 0)])
    assert rank == 2
    assert outside > 0.5


def test_twisted_objects():
    grading = symmetric(1, 2)
    objects = twisted_objects(2, grading)
    assert set(objects) == {"V", "charges", "q1", "casimir"}
    assert len(objects["charges"]) == 9
    assert objects["q1"].num_spaces() == 3
    assert objects["casimir"].num_spaces() == 2


def test_twisted_symmetry_scan():
    grading = symmetric(1, 2)
    report = twisted_symmetry_scan(1, grading, samples=2, seed=SEED)
    table = report.table("generators")
    assert len(table) == len(twisted_generators(1, grading))
    assert report.info("control_residual") >= 0
    assert report.info("sites") == 1
    assert "control_broken" not in report.expectations()


@pytest.mark.parametrize("m, n", [(1, 2), (2, 2)])
def test_check_twisted_dressed(m, n):
    report = check_twisted(symmetric(m, n), 1, samples=3, seed=SEED)
    assert report.passed()
    residuals = dict(report.residuals())
    assert {"dressed0", "dressed1", "dressed2"} <= set(residuals)
    assert residuals["dressed0"] < 1e-9
    assert report.info("sites") == 1


def test_twisted_symmetry_scan_two_sites():
    report = twisted_symmetry_scan(2, symmetric(1, 2), samples=2, seed=SEED)
    assert report.passed()
    assert report.expectations()["control_broken"]
    assert report.info("sites") == 2
