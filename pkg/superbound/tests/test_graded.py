# coding: utf-8
import hypothesis
import hypothesis.strategies as st
import pytest

from superbound._graded import *
from superbound._util import *

GL11 = Grading(1, 1)
GL21 = Grading(2, 1)
GL12_SYMMETRIC = Grading(1, 2, SYMMETRIC)
GRADINGS = (GL11, GL21, Grading(1, 2), Grading(2, 2), GL12_SYMMETRIC)
MAX_EXAMPLES = 40


def units(grading: Grading):
    d = grading.dim()
    return st.tuples(st.integers(0, d - 1), st.integers(0, d - 1)).map(
        lambda ij: unit(grading, *ij)
    )


def test_parities():
    assert GL21.parities() == (0, 0, 1)
    assert Grading(1, 2).parities() == (0, 1, 1)
    assert GL12_SYMMETRIC.parities() == (0, 1, 0)
    assert Grading(2, 2, SYMMETRIC).parities() == (0, 1, 1, 0)
    assert GL21.sdim() == 1
    assert Grading(2, 2).sdim() == 0
    assert GL21.rho() == Fraction(-1, 2)
    assert list(GL11.multi_parities(2)) == [0, 1, 1, 0]


def test_invalid_grading():
    with pytest.raises(GradingError):
        Grading(0, 0)
    with pytest.raises(GradingError):
        Grading(-1, 2)
    with pytest.raises(GradingError):
        Grading(1, 1, SYMMETRIC)
    with pytest.raises(GradingError):
        Grading(1, 1, "exotic")


def test_grading_equality():
    assert Grading(2, 1) == GL21
    assert hash(Grading(2, 1)) == hash(GL21)
    assert Grading(1, 2) != GL12_SYMMETRIC


def test_operator_validation():
    with pytest.raises(SpaceError):
        GradedOperator(GL11, np.zeros((2, 3)))
    with pytest.raises(SpaceError):
        GradedOperator(GL11, np.zeros((3, 3)))
    with pytest.raises(SpaceError):
        GradedOperator(GL11, np.zeros((4, 4)), 1)
    with pytest.raises(ValueError):
        GradedOperator(GL11, [[math.nan, 0], [0, 1]])
    assert GradedOperator(GL11, np.eye(8)).num_spaces() == 3


def test_operator_immutable():
    op = identity(GL21)
    with pytest.raises(ValueError):
        op.entries()[0, 0] = 2


def test_operator_arithmetic():
    a, b = unit(GL11, 0, 1), unit(GL11, 1, 0)
    assert (a @ b).allclose(unit(GL11, 0, 0))
    assert (a + b - b).allclose(a)
    assert (2 * a / 2).allclose(a)
    with pytest.raises(GradingError):
        a @ unit(GL21, 0, 1)
    with pytest.raises(SpaceError):
        a @ identity(GL11, 2)


def test_tensor_embed_sign():
    # (−1)^{[r_B]([r_A]+[c_A])}: only an odd row of B next to an odd A flips
    op = tensor_embed(unit(GL11, 0, 1), unit(GL11, 1, 0)).entries()
    assert op[1, 2] == -1
    op = tensor_embed(unit(GL11, 0, 1), unit(GL11, 0, 1)).entries()
    assert op[0, 3] == 1
    op = tensor_embed(unit(GL11, 1, 1), unit(GL11, 1, 1)).entries()
    assert op[3, 3] == 1


@hypothesis.settings(max_examples=MAX_EXAMPLES, deadline=None)
@hypothesis.given(st.data())
def test_tensor_embed_homomorphism(data):
    grading = data.draw(st.sampled_from(GRADINGS))
    a1, b1, a2, b2 = (data.draw(units(grading)) for _ in range(4))
    lhs = tensor_embed(a1, b1) @ tensor_embed(a2, b2)
    sign = (-1) ** (operator_parity(b1) * operator_parity(a2))
    rhs = sign * tensor_embed(a1 @ a2, b1 @ b2)
    assert lhs.allclose(rhs)


def test_super_permutation():
    P = graded_permutation(GL11, (1, 0)).entries()
    assert P[3, 3] == -1
    assert P[0, 0] == 1
    assert P[2, 1] == 1 and P[1, 2] == 1
    for grading in GRADINGS:
        P = graded_permutation(grading, (1, 0))
        assert (P @ P).allclose(identity(grading, 2))


def test_graded_permutation_invalid():
    with pytest.raises(SpaceError):
        graded_permutation(GL11, (0, 0))


@hypothesis.settings(max_examples=MAX_EXAMPLES, deadline=None)
@hypothesis.given(st.data())
def test_place_swaps_factors(data):
    grading = data.draw(st.sampled_from(GRADINGS))
    a, b = data.draw(units(grading)), data.draw(units(grading))
    swapped = place(tensor_embed(a, b), (1, 0), 2)
    P = graded_permutation(grading, (1, 0))
    assert swapped.allclose(P @ tensor_embed(a, b) @ P)
    assert swapped.allclose(tensor_embed(b, a) * (-1) ** (operator_parity(a) * operator_parity(b)))


def test_place():
    a = unit(GL21, 0, 2)
    assert place(a, (0,), 3).allclose(tensor_embed(a, identity(GL21, 2)))
    assert place(a, (2,), 3).allclose(tensor_embed(identity(GL21, 2), a))
    with pytest.raises(SpaceError):
        place(a, (3,), 3)
    with pytest.raises(SpaceError):
        place(tensor_embed(a, a), (1, 1), 3)


@hypothesis.settings(max_examples=MAX_EXAMPLES, deadline=None)
@hypothesis.given(st.data())
def test_super_trace_of_super_commutator(data):
    grading = data.draw(st.sampled_from(GRADINGS))
    a = tensor_embed(data.draw(units(grading)), data.draw(units(grading)))
    b = tensor_embed(data.draw(units(grading)), data.draw(units(grading)))
    assert abs(super_trace(super_commutator(a, b))) < 1e-12


def test_super_trace():
    assert super_trace(identity(GL21)) == GL21.sdim()
    assert super_trace(identity(GL21, 2)) == GL21.sdim() ** 2
    assert super_trace(unit(GL21, 2, 2)) == -1


def test_partial_super_trace_aux():
    a = diagonal(GL21, [1, 2, 5])
    b = unit(GL21, 0, 2)
    assert partial_super_trace_aux(tensor_embed(a, b)).allclose(super_trace(a) * b)
    with pytest.raises(SpaceError):
        partial_super_trace_aux(a)


def test_transpose_T():
    grading = GL21
    for i in range(3):
        for j in range(3):
            e = unit(grading, i, j)
            twice = transpose_T(transpose_T(e))
            sign = (-1) ** (grading.parity(i) + grading.parity(j))
            assert twice.allclose(sign * e)
    # (AB)ᵀ = (−1)^{[A][B]} BᵀAᵀ for homogeneous A and B
    a, b = unit(grading, 0, 2), unit(grading, 2, 1)
    assert transpose_T(a @ b).allclose(-(transpose_T(b) @ transpose_T(a)))


def test_partial_transpose():
    a, b = unit(GL21, 0, 2), unit(GL21, 1, 1)
    op = tensor_embed(a, b)
    assert partial_transpose(op, 0).allclose(tensor_embed(transpose_T(a), b))
    V = crossing_form(GL21)
    assert partial_transpose(op, 0, "t", V).allclose(partial_transpose(op, 0))
    with pytest.raises(ValueError):
        partial_transpose(op, 0, "t")
    with pytest.raises(SpaceError):
        partial_transpose(op, 2)


def test_operator_parity():
    assert operator_parity(unit(GL21, 0, 1)) == 0
    assert operator_parity(unit(GL21, 0, 2)) == 1
    assert operator_parity(zero(GL21)) == 0
    assert operator_parity(unit(GL21, 0, 1) + unit(GL21, 0, 2)) is None
    with pytest.raises(ParityError):
        super_commutator(unit(GL21, 0, 1) + unit(GL21, 0, 2), identity(GL21))


def test_super_commutator_of_odd_units():
    a, b = unit(GL11, 0, 1), unit(GL11, 1, 0)
    assert super_commutator(a, b).allclose(identity(GL11))


def test_aux_components():
    rng = np.random.default_rng(7)
    entries = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    op = GradedOperator(GL12_SYMMETRIC, entries, 2)
    components = aux_components(op)
    assert from_aux_components(GL12_SYMMETRIC, components).allclose(op)
    b = unit(GL12_SYMMETRIC, 1, 2)
    split = aux_components(tensor_embed(unit(GL12_SYMMETRIC, 0, 1), b))
    assert split[(0, 1)].allclose(b)
    assert split[(1, 0)].allclose(zero(GL12_SYMMETRIC))


def test_crossing_form():
    V = crossing_form(GL12_SYMMETRIC)
    assert np.array_equal(V, [[0, 0, 1], [0, 1, 0], [-1, 0, 0]])
    assert np.array_equal(crossing_form(GL21), np.eye(3))
    V = crossing_form(Grading(2, 2))
    assert np.array_equal(V, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
