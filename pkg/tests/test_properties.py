"""Property-based checks of the algebraic invariants."""

from fractions import Fraction
from math import comb

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from heckespec import (
    CornerShape,
    QParam,
    antisymmetrizer,
    enumerate_basis,
    generator_matrix,
    linalg,
    predicted_spectrum,
    q_int,
)

nonzero_rationals = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=6
).filter(lambda f: f != 0)

small_shapes = st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda kl: sum(kl) >= 1)


@given(p=st.integers(0, 16), value=nonzero_rationals)
def test_q_int_clears_denominator(p, value):
    q = QParam(value)
    assert q_int(p, q) * (value - 1 / value) == value**p - value**-p


@given(p=st.integers(0, 12), value=nonzero_rationals)
def test_q_int_recurrence(p, value):
    q = QParam(value)
    assert q_int(p + 1, q) == value * q_int(p, q) + q.power(-p)


@given(kl=small_shapes)
def test_basis_is_lexicographic_and_complete(kl):
    shape = CornerShape(*kl)
    basis = enumerate_basis(shape)
    elements = list(basis)
    assert len(elements) == comb(shape.k + shape.l, shape.l)
    assert elements == sorted(elements)
    assert len(set(elements)) == len(elements)
    for index in elements:
        assert list(index) == sorted(index)
        assert all(2 <= i <= shape.k + shape.l + 1 for i in index)


@settings(max_examples=30)
@given(kl=small_shapes, value=st.sampled_from([Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2)]))
def test_generator_matrix_shape_facts(kl, value):
    shape = CornerShape(*kl)
    q = QParam(value)
    first = generator_matrix(shape, 1, q)
    off_diagonal = first - np.diag(np.diag(first))
    assert linalg.max_abs(off_diagonal) == 0
    for p in range(1, shape.n_generators + 1):
        matrix = generator_matrix(shape, p, q)
        for i in range(matrix.shape[0]):
            assert sum(1 for x in matrix[i, :] if x != 0) <= 2
            assert sum(1 for x in matrix[:, i] if x != 0) <= 2


@settings(max_examples=20)
@given(kl=small_shapes, value=st.sampled_from([Fraction(1, 2), Fraction(3, 2), Fraction(2)]))
def test_generator_eigenvalues_are_the_two_roots(kl, value):
    shape = CornerShape(*kl)
    q = QParam(value)
    identity = linalg.eye(shape.dim)
    for p in range(1, shape.n_generators + 1):
        matrix = generator_matrix(shape, p, q)
        annihilated = linalg.mat_mul(matrix - value * identity, matrix + (1 / value) * identity)
        assert linalg.max_abs(annihilated) == 0


@settings(max_examples=15, deadline=None)
@given(d=st.integers(2, 4), l=st.integers(2, 3))
def test_antisymmetrizer_projector_properties(d, l):
    anti = antisymmetrizer(d, l)
    assert linalg.max_abs(linalg.mat_mul(anti, anti) - anti) == 0
    assert linalg.exact_rank(anti) == comb(d, l)


@given(kl=small_shapes)
def test_predicted_spectrum_sums_to_zero(kl):
    shape = CornerShape(*kl)
    prediction = predicted_spectrum(shape)
    assert abs(float(np.sum(prediction.eigenvalues))) < 1e-9
    assert len(prediction) == shape.dim
