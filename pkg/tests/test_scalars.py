from fractions import Fraction

import pytest

from heckespec import (
    APPROXIMATE,
    EXACT,
    GenericityCertificate,
    NonGenericParameter,
    QParam,
    ensure_generic,
    q_int,
)

EXACT_GRID = [Fraction(1, 2), Fraction(3, 4), Fraction(3, 2), Fraction(2)]


def test_q_int_of_one_is_one():
    for value in EXACT_GRID:
        assert q_int(1, QParam(value)) == 1
    assert q_int(1, QParam.approximate(1.7)) == pytest.approx(1.0, abs=0)


def test_q_int_at_q_one_is_classical():
    q = QParam.exact(1)
    assert q_int(3, q) == 3
    assert q_int(0, q) == 0
    assert [q_int(p, q) for p in range(1, 8)] == list(range(1, 8))


def test_q_int_two_at_q_two():
    # (2)_q = q + 1/q evaluated at q = 2
    assert q_int(2, QParam.exact(2)) == Fraction(5, 2)


def test_q_int_matches_quotient_form():
    # (p)_q * (q - 1/q) == q**p - q**-p for p up to 16, both backends
    for value in EXACT_GRID:
        if value == 1:
            continue
        q = QParam(value)
        for p in range(17):
            lhs = q_int(p, q) * (q.q - q.q_inv)
            assert lhs == value**p - value**-p
    q = QParam.approximate(1.3)
    for p in range(17):
        lhs = q_int(p, q) * (q.q - q.q_inv)
        assert lhs == pytest.approx(1.3**p - 1.3**-p, rel=1e-12)


def test_q_int_recurrence():
    for value in EXACT_GRID:
        q = QParam(value)
        for p in range(16):
            assert q_int(p + 1, q) == q.q * q_int(p, q) + q.power(-p)


def test_backends_agree():
    for value in EXACT_GRID:
        exact = QParam(value)
        approx = QParam.approximate(float(value))
        for p in range(17):
            assert abs(float(q_int(p, exact)) - q_int(p, approx)) < 1e-12


def test_q_int_stable_near_one():
    q = QParam.approximate(1.0 + 1e-13)
    assert q_int(5, q) == pytest.approx(5.0, rel=1e-10)


class TestQParam:
    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            QParam(Fraction(0))
        with pytest.raises(ValueError):
            QParam(0.0)

    def test_int_promotes_to_exact(self):
        q = QParam(2)
        assert q.is_exact and q.q == Fraction(2)

    def test_inverse(self):
        q = QParam.exact("3/2")
        assert q.q_inv == Fraction(2, 3)
        assert q.q * q.q_inv == 1
        approx = QParam.approximate(2.0)
        assert approx.q * approx.q_inv == pytest.approx(1.0)

    def test_power(self):
        q = QParam.exact("3/2")
        assert q.power(-2) == Fraction(4, 9)
        assert q.power(0) == 1
        assert q.power(3) == Fraction(27, 8)

    def test_parse_routes_backends(self):
        assert QParam.parse("3/2").backend == EXACT
        assert QParam.parse("2").backend == EXACT
        assert QParam.parse("1.5").backend == APPROXIMATE
        assert QParam.parse("3/2", APPROXIMATE).q == 1.5

    def test_parse_rejects_decimal_coercion(self):
        with pytest.raises(ValueError):
            QParam.parse("1.5", EXACT)

    def test_nonsense_rejected(self):
        with pytest.raises(ValueError):
            QParam.parse("zebra")


class TestEnsureGeneric:
    def test_positive_q_all_positive(self):
        cert = ensure_generic(QParam.exact(2), 8)
        assert isinstance(cert, GenericityCertificate)
        assert cert.n_max == 8
        assert all(value > 0 for _, value in cert.values)

    def test_classical_point(self):
        cert = ensure_generic(QParam.exact(1), 5)
        assert [value for _, value in cert.values] == [1, 2, 3, 4, 5]

    def test_negative_q_survives(self):
        # real nonzero q never kills a q-integer; q = -1 gives (2)_q = -2
        cert = ensure_generic(QParam.exact(-1), 3)
        assert cert.values[1][1] == -2

    def test_tiny_float_q_integer_flagged(self):
        # synthetic approximate failure through the epsilon threshold
        with pytest.raises(NonGenericParameter) as info:
            ensure_generic(QParam.approximate(1.0), 3, eps=10.0)
        assert info.value.p == 1

    def test_bad_n_max(self):
        with pytest.raises(ValueError):
            ensure_generic(QParam.exact(2), 0)
