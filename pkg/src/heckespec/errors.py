"""Exception types shared across the library."""


class NonGenericParameter(ValueError):
    """A q-integer that appears as a denominator vanishes at this q.

    Representation matrices divide by the q-analogs (p)_q, so they are
    undefined wherever one of them is zero (exactly, or below the genericity
    threshold on the approximate backend).
    """

    def __init__(self, p: int, value=None):
        self.p = p
        self.value = value
        super().__init__(f"q-integer ({p})_q vanishes; representation matrices are undefined here")


class CapacityExceeded(ValueError):
    """A requested construction would exceed the configured dimension cap."""

    def __init__(self, requested: int, cap: int, what: str = "dimension"):
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what} {requested} exceeds the configured cap {cap}")


class SingularConjugator(ArithmeticError):
    """The cyclic conjugating element failed its invertibility sanity check.

    For generic q this cannot happen; it signals a broken construction or a
    numerically degenerate parameter, and is treated as a hard failure rather
    than a reported residual.
    """


class DegenerateWedge(ArithmeticError):
    """A wedged eigenvector collapsed to (numerically) zero.

    Signals numerical breakdown of the explicit eigenvector construction,
    not a failure of the identities under test.
    """
