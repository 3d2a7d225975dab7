"""Scalar backends, the deformation parameter, and q-integers.

Everything in this library is computed over one of two scalar backends:
exact arbitrary-precision rationals (``fractions.Fraction``) or IEEE
doubles.  The deformation parameter is wrapped in :class:`QParam`, which
pins the backend for every matrix derived from it.  Equality on the exact
backend is literal; on the approximate backend it always goes through an
explicit tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import NonGenericParameter

Scalar = Fraction | float

EXACT = "exact"
APPROXIMATE = "approximate"

#: default tolerance for approximate-backend equality and residual checks
EPS_EQUALITY = 1e-9

#: magnitude below which a q-integer counts as vanishing on the approximate backend
EPS_GENERIC = 1e-6


@dataclass(frozen=True)
class QParam:
    """Nonzero real deformation parameter with a fixed scalar backend.

    A ``Fraction`` value selects the exact backend, a ``float`` the
    approximate one.  Integers are promoted to exact rationals.
    """

    q: Scalar

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, (Fraction, int, float)):
            raise TypeError(f"q must be a Fraction, int, or float, not {type(self.q).__name__}")
        if isinstance(self.q, int):
            object.__setattr__(self, "q", Fraction(self.q))
        if isinstance(self.q, float) and not math.isfinite(self.q):
            raise ValueError("q must be finite")
        if self.q == 0:
            raise ValueError("q must be nonzero")

    @classmethod
    def exact(cls, value) -> "QParam":
        """Exact-backend parameter from an int, string like ``"3/2"``, or Fraction."""
        return cls(Fraction(value))

    @classmethod
    def approximate(cls, value) -> "QParam":
        """Approximate-backend parameter from anything float() accepts."""
        return cls(float(value))

    @classmethod
    def parse(cls, text: str, backend: str | None = None) -> "QParam":
        """Parse a command-line q value.

        ``"a/b"`` and integer literals are exact unless ``backend`` says
        otherwise.  Decimal literals are approximate; asking for the exact
        backend with a decimal is rejected rather than silently coercing q
        to a nearby rational.
        """
        text = text.strip()
        if "/" in text:
            value = Fraction(text)
            return cls(float(value)) if backend == APPROXIMATE else cls(value)
        try:
            as_int = int(text)
        except ValueError:
            as_int = None
        if as_int is not None:
            return cls(float(as_int)) if backend == APPROXIMATE else cls(Fraction(as_int))
        value = float(text)
        if backend == EXACT:
            raise ValueError(
                f"refusing to coerce decimal q={text!r} onto the exact backend; "
                "pass an integer or a ratio like 3/2"
            )
        return cls(value)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.q, Fraction)

    @property
    def backend(self) -> str:
        return EXACT if self.is_exact else APPROXIMATE

    @cached_property
    def q_inv(self) -> Scalar:
        return 1 / self.q

    def power(self, n: int) -> Scalar:
        """q**n for any integer n, negative exponents via the cached inverse."""
        return self.q ** n if n >= 0 else self.q_inv ** (-n)

    def as_approximate(self) -> "QParam":
        return self if not self.is_exact else QParam(float(self.q))

    def zero(self) -> Scalar:
        return Fraction(0) if self.is_exact else 0.0


@dataclass(frozen=True)
class GenericityCertificate:
    """Witness that the q-integers (1)_q ... (n_max)_q are all nonzero."""

    n_max: int
    backend: str
    values: tuple[tuple[int, Scalar], ...]


def q_int(p: int, q: QParam) -> Scalar:
    """The balanced q-analog of the integer p.

    Equals (q^p - q^-p)/(q - q^-1) away from q = 1 and p at q = 1.  Computed
    as the Laurent sum q^(p-1) + q^(p-3) + ... + q^(1-p), which is the same
    rational function with the removable singularity already removed, and is
    numerically stable near q = 1.

    >>> q_int(3, QParam.exact(2))
    Fraction(21, 4)
    >>> q_int(5, QParam.exact(1))
    Fraction(5, 1)
    """
    if p < 0:
        raise ValueError("p must be non-negative")
    total = q.zero()
    if p == 0:
        return total
    term = q.power(p - 1)
    step = q.q_inv * q.q_inv
    for _ in range(p):
        total += term
        term *= step
    return total


def ensure_generic(q: QParam, n_max: int, eps: float = EPS_GENERIC) -> GenericityCertificate:
    """Check that no q-integer up to (n_max)_q vanishes.

    Returns a certificate listing the checked values, or raises
    :class:`NonGenericParameter` naming the first vanishing one.  On the
    approximate backend "vanishes" means magnitude at most ``eps``.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    values = []
    for p in range(1, n_max + 1):
        value = q_int(p, q)
        vanished = value == 0 if q.is_exact else abs(value) <= eps
        if vanished:
            raise NonGenericParameter(p, value)
        values.append((p, value))
    return GenericityCertificate(n_max, q.backend, tuple(values))


def approx_equal(a, b, tol: float = EPS_EQUALITY) -> bool:
    """Relative comparison with an absolute floor of 1."""
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def scalar_repr(x: Scalar) -> str:
    """Canonical string for reports: `a/b` or integer for exact, repr for floats."""
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))
