import math
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest

from heckespec import (
    CornerShape,
    QParam,
    build_hamiltonian,
    commuting_family_check,
    hamiltonian_shift,
    intertwiner_matrix,
    linalg,
    numeric_spectrum,
    path_adjacency,
    predicted_spectrum,
    two_row_eigensystem,
    two_row_hamiltonian,
    verify_intertwiner,
    verify_isospectral,
    verify_large_q_limit,
    verify_spectrum,
)

Q2 = QParam.exact(2)
Q32 = QParam.exact("3/2")
EXACT_GRID = [QParam.exact(v) for v in (Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2))]


class TestBuildHamiltonian:
    def test_one_dimensional_shapes_vanish(self):
        assert build_hamiltonian(CornerShape(1, 0), Q2)[0, 0] == 0
        assert build_hamiltonian(CornerShape(0, 2), Q2)[0, 0] == 0

    def test_traceless(self):
        for shape in [CornerShape(2, 1), CornerShape(2, 2), CornerShape(3, 2)]:
            for q in EXACT_GRID:
                assert linalg.trace(build_hamiltonian(shape, q)) == 0

    def test_shift_value(self):
        assert hamiltonian_shift(CornerShape(3, 2), Q2) == 6 - Fraction(2, 2) * 1  # 2*3 - (1/2)*2

    def test_frozen_two_by_two(self):
        # hand-applied generator action for (1,1) at q=2
        expected = np.array(
            [[Fraction(-2, 5), Fraction(21, 10)], [Fraction(2, 5), Fraction(2, 5)]], dtype=object
        )
        assert linalg.max_abs(build_hamiltonian(CornerShape(1, 1), Q2) - expected) == 0


class TestTwoRowClosedForm:
    def test_frozen_entry(self):
        # superdiagonal entry (2,3) is (3)_q/(2)_q = 21/10 at q=2
        matrix = two_row_hamiltonian(1, Q2)
        assert matrix[0, 1] == Fraction(21, 10)

    def test_matches_generic_construction(self):
        for k in range(9):
            for q in EXACT_GRID:
                diff = two_row_hamiltonian(k, q) - build_hamiltonian(CornerShape(k, 1), q)
                assert linalg.max_abs(diff) == 0, (k, q.q)

    def test_classical_point_matrix(self):
        expected = np.array(
            [
                [Fraction(-1, 2), Fraction(3, 2), Fraction(0)],
                [Fraction(1, 2), Fraction(-1, 6), Fraction(4, 3)],
                [Fraction(0), Fraction(2, 3), Fraction(2, 3)],
            ],
            dtype=object,
        )
        assert linalg.max_abs(two_row_hamiltonian(2, QParam.exact(1)) - expected) == 0


class TestPathAdjacency:
    def test_two_nodes(self):
        assert path_adjacency(1, exact=False).tolist() == [[0.0, 1.0], [1.0, 0.0]]

    def test_single_node(self):
        assert path_adjacency(0)[0, 0] == 0

    def test_tridiagonal(self):
        matrix = path_adjacency(3, exact=False)
        assert matrix.shape == (4, 4)
        assert np.array_equal(matrix, np.diag(np.ones(3), 1) + np.diag(np.ones(3), -1))


class TestIntertwiner:
    def test_frozen_small_matrix(self):
        matrix = intertwiner_matrix(1, Q2)
        expected = np.array([[Fraction(1), Fraction(-2, 5)], [Fraction(0), Fraction(2, 5)]], dtype=object)
        assert linalg.max_abs(matrix - expected) == 0

    def test_trivial_size(self):
        assert intertwiner_matrix(0, Q2)[0, 0] == 1

    def test_classical_point(self):
        expected = np.array(
            [
                [Fraction(1), Fraction(-1, 2), Fraction(0)],
                [Fraction(0), Fraction(1, 2), Fraction(-1, 3)],
                [Fraction(0), Fraction(0), Fraction(1, 3)],
            ],
            dtype=object,
        )
        assert linalg.max_abs(intertwiner_matrix(2, QParam.exact(1)) - expected) == 0

    def test_intertwines_exactly(self):
        for k in (0, 3, 5):
            report = verify_intertwiner(k, Q32)
            assert report.passed and report.max_residual() == 0

    def test_intertwines_approximately(self):
        report = verify_intertwiner(5, QParam.approximate(2.0))
        assert report.passed
        assert report.max_residual() < 1e-9


class TestLargeQLimit:
    def test_deviation_small_at_large_q(self):
        report = verify_large_q_limit(2)
        assert report.passed
        final = [c for c in report.checks if c.name == "limit.final"][0]
        assert final.residual < 1e-3

    def test_trivial_single_node(self):
        assert verify_large_q_limit(0).passed

    def test_monotone_decrease(self):
        report = verify_large_q_limit(3, q_values=(10.0, 100.0))
        monotone = [c for c in report.checks if c.name == "limit.monotone"][0]
        deviations = [float(x) for x in monotone.context["deviations"].split(";")]
        assert deviations[1] < deviations[0]

    def test_rejects_unsorted_grid(self):
        with pytest.raises(ValueError):
            verify_large_q_limit(2, q_values=(100.0, 10.0))


class TestPredictedSpectrum:
    def test_two_box_hook(self):
        values = predicted_spectrum(CornerShape(1, 1)).eigenvalues
        assert values == pytest.approx([-1.0, 1.0])

    def test_three_box_row_hook(self):
        values = predicted_spectrum(CornerShape(2, 1)).eigenvalues
        assert values == pytest.approx([-math.sqrt(2), 0.0, math.sqrt(2)])

    def test_three_box_column_hook(self):
        values = predicted_spectrum(CornerShape(1, 2)).eigenvalues
        assert values == pytest.approx([-math.sqrt(2), 0.0, math.sqrt(2)])

    def test_capacity_cap(self):
        from heckespec import CapacityExceeded

        with pytest.raises(CapacityExceeded):
            predicted_spectrum(CornerShape(10, 10), dim_cap=100)

    def test_multiset_size_and_zero_sum(self):
        for k in range(5):
            for l in range(5):
                if k + l < 1:
                    continue
                prediction = predicted_spectrum(CornerShape(k, l))
                assert len(prediction) == comb(k + l, l)
                assert abs(float(np.sum(prediction.eigenvalues))) < 1e-9

    def test_complement_negation_duality(self):
        # the multiset of sums over l-subsets equals the negated multiset
        # over complements, because all k+l cosines sum to zero
        for k, l in [(2, 2), (3, 2), (1, 4)]:
            shape = CornerShape(k, l)
            n = k + l
            cosines = {m: 2 * math.cos(math.pi * m / (n + 1)) for m in range(1, n + 1)}
            direct = sorted(sum(cosines[m] for m in tup) for tup in combinations(range(1, n + 1), l))
            flipped = sorted(
                -sum(cosines[m] for m in set(range(1, n + 1)) - set(tup))
                for tup in combinations(range(1, n + 1), l)
            )
            assert direct == pytest.approx(flipped, abs=1e-12)
            assert predicted_spectrum(shape).eigenvalues == pytest.approx(direct, abs=1e-12)


class TestEigensystem:
    def test_path_sine_vector(self):
        # two-node path: (sin 60, sin 120) is the eigenvector for 2cos(60)
        sine = np.array([math.sin(math.pi / 3), math.sin(2 * math.pi / 3)])
        assert np.allclose(path_adjacency(1, exact=False) @ sine, 1.0 * sine)
        assert sine == pytest.approx([math.sqrt(3) / 2, math.sqrt(3) / 2])

    def test_explicit_eigenvectors(self):
        system = two_row_eigensystem(1, Q2)
        assert max(system.residuals) < 1e-12
        assert system.eigenvalues[0] == pytest.approx(1.0)

    def test_middle_mode_is_zero(self):
        system = two_row_eigensystem(2, Q2)
        assert system.eigenvalues[1] == pytest.approx(0.0, abs=1e-15)

    def test_vectors_unit_norm(self):
        system = two_row_eigensystem(4, QParam.approximate(0.6))
        for vec in system.vectors:
            assert np.linalg.norm(vec) == pytest.approx(1.0)


class TestVerifySpectrum:
    def test_two_by_two(self):
        report = verify_spectrum(CornerShape(1, 1), QParam.approximate(2.0))
        assert report.passed
        vectors = [c for c in report.checks if c.name == "spectrum.eigenvectors"][0]
        assert vectors.residual < 1e-10

    def test_six_dimensional(self):
        report = verify_spectrum(CornerShape(2, 2), QParam.approximate(1.5))
        assert report.passed
        assert {c.name for c in report.checks} == {
            "spectrum.eigenvalues",
            "spectrum.eigenvectors",
            "spectrum.annihilator",
        }

    def test_trivial_column(self):
        prediction = predicted_spectrum(CornerShape(0, 2))
        assert list(prediction.eigenvalues) == pytest.approx([0.0], abs=1e-14)
        assert verify_spectrum(CornerShape(0, 2), Q2).passed

    def test_numeric_spectrum_is_real_and_sorted(self):
        values = numeric_spectrum(CornerShape(3, 2), QParam.approximate(1.1))
        assert np.all(np.diff(values) >= 0)
        assert values.dtype == np.float64


class TestIsospectral:
    def test_distinct_parameters(self):
        report = verify_isospectral(CornerShape(2, 1), QParam.approximate(1.1), QParam.approximate(2.0))
        assert report.passed and report.max_residual() < 1e-9

    def test_equal_parameters(self):
        q = QParam.approximate(1.5)
        report = verify_isospectral(CornerShape(1, 1), q, q)
        assert report.max_residual() == 0

    def test_wide_pair(self):
        report = verify_isospectral(CornerShape(2, 2), QParam.approximate(0.6), QParam.approximate(3.0))
        assert report.passed and report.max_residual() < 1e-9


class TestCommutingFamily:
    def test_frozen_diagonal(self):
        # N^-1 C(2) C(3)^-1 N = diag(1, (2)_3/(2)_2) = diag(1, 4/3)
        report = commuting_family_check(1, Q2, QParam.exact(3))
        assert report.passed and report.max_residual() == 0
        c_two = intertwiner_matrix(1, Q2)
        c_three_inv = linalg.invert(intertwiner_matrix(1, QParam.exact(3)))
        n_mat = np.array([[Fraction(1), Fraction(-1)], [Fraction(0), Fraction(1)]], dtype=object)
        conjugated = linalg.mat_chain(linalg.invert(n_mat), c_two, c_three_inv, n_mat)
        expected = np.array([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(4, 3)]], dtype=object)
        assert linalg.max_abs(conjugated - expected) == 0

    def test_equal_parameters_give_identity(self):
        report = commuting_family_check(2, Q2, Q2)
        assert report.passed
        # with q == r the family is empty and the diagonal is all ones
        c_mat = intertwiner_matrix(2, Q2)
        product = linalg.mat_mul(c_mat, linalg.invert(c_mat))
        assert linalg.max_abs(product - linalg.eye(3)) == 0

    def test_exact_commutators(self):
        report = commuting_family_check(3, QParam.exact("1/2"), Q2)
        assert report.passed and report.max_residual() == 0

    def test_mixed_backends_rejected(self):
        with pytest.raises(ValueError):
            commuting_family_check(2, Q2, QParam.approximate(3.0))
