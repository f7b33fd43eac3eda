# coding: utf-8
import multiprocessing

import numpy as np
import pytest

from superbound import *
from tests.util import *

EXACT = 1e-12


@pytest.mark.parametrize("grading", gradings(), ids=str)
def test_ybe(grading):
    report = check_ybe(grading, samples=20, seed=SEED)
    assert report.passed()
    assert report.max_residual() < 1e-11
    assert len(report.residuals()) == 20


@pytest.mark.parametrize("grading", gradings(), ids=str)
def test_rtt(grading):
    for N in (1, 2):
        assert check_rtt(grading, N, samples=5, seed=SEED).passed()


def test_rtt_three_sites():
    assert check_rtt(Grading(2, 1), 3, samples=3, seed=SEED).passed()


def test_seed():
    grading = Grading(2, 1)
    r1 = check_ybe(grading, samples=5, seed=SEED)
    r2 = check_ybe(grading, samples=5, seed=SEED)
    assert r1.residuals() == r2.residuals()


def test_mapper():
    grading = Grading(1, 1)
    expected = check_ybe(grading, samples=4, seed=SEED)
    with multiprocessing.Pool(2) as pool:
        report = check_ybe(grading, samples=4, seed=SEED, mapper=pool.map)
    assert report.residuals() == expected.residuals()


@pytest.mark.parametrize("grading", gradings() + [symmetric(1, 2), symmetric(2, 2)], ids=str)
def test_permutation_identities(grading):
    P = permutation_P(grading)
    assert (P @ P).allclose(identity(grading, 2), EXACT)
    Q = projector_Q(grading)
    assert (Q @ Q).allclose(2 * float(rho(grading)) * Q, EXACT)


@pytest.mark.parametrize("grading, eta", [
    (Grading(2, 2), 1),
    (symmetric(1, 2), -1),
    (symmetric(2, 2), -1),
], ids=str)
def test_pq(grading, eta):
    P, Q = permutation_P(grading), projector_Q(grading)
    assert (P @ Q).allclose(eta * Q, EXACT)
    assert (Q @ P).allclose(eta * Q, EXACT)


def test_permutation_action():
    grading = Grading(1, 1)
    P = permutation_P(grading).entries()
    # odd ⊗ odd picks up a sign
    assert P[3, 3] == -1
    assert P[1, 2] == 1


def test_r_matrix():
    grading = Grading(2, 1)
    lam = 0.4 - 1.3j
    R = R_rational(lam, grading)
    assert R.allclose(lam * identity(grading, 2) + 1j * permutation_P(grading))
    # unitarity: R(λ)R(−λ) = −(λ² + 1)
    assert (R @ R_rational(-lam, grading)).allclose(-(lam ** 2 + 1) * identity(grading, 2), 1e-12)


def test_generator():
    grading = Grading(2, 1)
    assert generator(grading, 0, 2).allclose(-unit(grading, 2, 0))
    assert generator(grading, 2, 0).allclose(unit(grading, 0, 2))
    P = permutation_P(grading)
    total = sum((tensor_embed(unit(grading, a, b), generator(grading, a, b))
                 for a in range(3) for b in range(3)), zero(grading, 2))
    assert total.allclose(P)


@pytest.mark.parametrize("grading", gradings() + [symmetric(1, 2)], ids=str)
def test_gl_relations(grading):
    for N in (1, 2):
        report = check_gl_relations(coproduct_generators(N, grading))
        assert report.passed()
        assert {label for label, _ in report.residuals()} == {"diagonal", "disjoint", "left", "right"}


def test_opposite_coproduct():
    for grading in (Grading(1, 1), Grading(2, 1)):
        for N in (2, 3):
            assert check_opposite_coproduct(N, grading).passed()


def test_monodromy():
    grading = Grading(1, 1)
    lam = 0.7 + 0.2j
    T = monodromy_T(lam, 2, grading)
    expected = place(R_rational(lam, grading), (0, 2), 3) @ place(R_rational(lam, grading), (0, 1), 3)
    assert T.allclose(expected)
    assert monodromy_T(lam, 2, grading, normalize=True).allclose(expected / lam ** 2)
    with pytest.raises(SpaceError):
        monodromy_T(lam, 0, grading)


def test_coproduct_is_primitive():
    grading = Grading(1, 2)
    x = generator(grading, 0, 1)
    assert coproduct(x, 2).allclose(tensor_embed(x, identity(grading)) + tensor_embed(identity(grading), x))
    generators = coproduct_generators(2, grading)
    assert len(generators) == 9
    assert list(generators)[0] == (0, 0)
    assert np.allclose(generators[(1, 2)].entries(), coproduct(generator(grading, 1, 2), 2).entries())
