# coding: utf-8
import cmath

import pytest

from superbound._util import *

SEED = 20240101
AVOID = (0, 1j, -1j)


def test_relative_residual():
    a = np.eye(2)
    assert relative_residual(a, a) == 0
    assert relative_residual(2 * a, a) == pytest.approx(1 / 2)
    # small operands are not blown up
    assert relative_residual(1e-3 * a, 0 * a) == pytest.approx(1e-3 * math.sqrt(2))


def test_commutator_residual():
    x = np.array([[0, 1], [0, 0]])
    y = np.array([[0, 0], [1, 0]])
    assert commutator_residual(x, x) == 0
    assert commutator_residual(np.eye(2), y) == 0
    assert commutator_residual(x, y) > 0.5


def test_safe_inverse():
    m = np.array([[2, 1], [1, 1]], dtype=complex)
    assert np.allclose(safe_inverse(m) @ m, np.eye(2))
    with pytest.raises(SingularPointError):
        safe_inverse(np.array([[1, 1], [1, 1]], dtype=complex))


def test_retry_singular():
    draws = iter(range(100))
    seen = []

    def func(x):
        seen.append(x)
        if x < 3:
            raise SingularPointError("singular")
        return x

    assert retry_singular(func, lambda: next(draws)) == 3
    assert seen == [0, 1, 2, 3]


def test_retry_singular_gives_up():
    def func(x):
        raise SingularPointError("always")

    with pytest.raises(SingularPointError):
        retry_singular(func, lambda: 0, attempts=4)


def test_sampler_seed():
    assert SpectralSampler(SEED).points(10) == SpectralSampler(SEED).points(10)
    assert SpectralSampler(SEED).points(10) != SpectralSampler(SEED + 1).points(10)


def test_sampler_avoid():
    sampler = SpectralSampler(SEED, avoid=AVOID, radius=0.1)
    for z in sampler.points(200):
        assert abs(z.real) <= 2 and abs(z.imag) <= 2
        assert all(abs(z - a) >= 0.1 for a in AVOID)
    for z1, z2 in sampler.pairs(50):
        assert sampler.admissible(z1 - z2)
        assert sampler.admissible(z1 + z2)
    assert not sampler.admissible(0.05j)


def test_parse_complex():
    assert parse_complex("1.5,-2") == complex(1.5, -2)
    assert parse_complex(" 3 ") == 3
    with pytest.raises(ValueError):
        parse_complex("1,2,3")
    with pytest.raises(ValueError):
        parse_complex("a,b")


def test_parse_ints():
    assert parse_ints("1,1,0,2") == (1, 1, 0, 2)
    assert parse_ints("4") == (4,)


def test_q_number():
    q = cmath.exp(0.3j)
    assert q_number(1, q) == pytest.approx(1)
    assert q_number(2, q) == pytest.approx(q + 1 / q)
    assert q_number(0, q) == 0


def test_is_close_to_root_of_unity():
    assert is_close_to_root_of_unity(1j)
    assert is_close_to_root_of_unity(cmath.exp(2j * math.pi / 5))
    assert not is_close_to_root_of_unity(cmath.exp(0.3j + 0.1))


def test_max_or_zero():
    assert max_or_zero([]) == 0
    assert max_or_zero(iter([1, 3, 2])) == 3
    assert math.isnan(max_or_zero([1, math.nan]))
