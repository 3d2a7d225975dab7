"""Corner-diagram representations of the A-type Hecke algebra.

A corner (hook) shape with arm length k and leg length l carries an
irreducible representation of the Hecke algebra on k+l generators, with
basis vectors labelled by the l-element subsets I of {2, ..., k+l+1} (the
leg entries of a standard tableau).  Each generator acts on a basis vector
with at most two terms, so the generator matrices have at most two nonzero
entries per row and per column.

Matrix orientation: entry [i, j] of a representation matrix is the
coefficient of basis vector j in the image of basis vector i, i.e. row i
holds the expansion of the i-th basis vector's image.  With this choice the
two-row closed form, the triangular intertwiner identity, and the wedge
transport in the sibling modules hold entrywise exactly as constructed.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from . import linalg
from .errors import CapacityExceeded, SingularConjugator
from .reports import VerificationReport
from .scalars import EPS_EQUALITY, QParam, Scalar, ensure_generic, q_int, scalar_repr

BasisIndex = tuple[int, ...]

DEFAULT_DIM_CAP = 1000
DIM_CAP_ENV_VAR = "HECKESPEC_DIM_CAP"


def dimension_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(DIM_CAP_ENV_VAR)
    return int(env) if env else DEFAULT_DIM_CAP


@dataclass(frozen=True, order=True)
class CornerShape:
    """Hook diagram with a first row of k+1 boxes and l extra single-box rows."""

    k: int
    l: int

    def __post_init__(self):
        if self.k < 0 or self.l < 0:
            raise ValueError("k and l must be non-negative")
        if self.k + self.l < 1:
            raise ValueError("need k + l >= 1 for a nontrivial algebra")

    @property
    def n_generators(self) -> int:
        return self.k + self.l

    @property
    def n_boxes(self) -> int:
        return self.k + self.l + 1

    @property
    def dim(self) -> int:
        return comb(self.k + self.l, self.l)


@dataclass(frozen=True)
class Basis:
    """Ordered leg-set basis with positional lookup."""

    shape: CornerShape
    elements: tuple[BasisIndex, ...]

    @cached_property
    def _positions(self) -> dict[BasisIndex, int]:
        return {index: i for i, index in enumerate(self.elements)}

    def position(self, index: BasisIndex) -> int:
        try:
            return self._positions[tuple(index)]
        except KeyError:
            raise ValueError(f"{index} is not a basis index of shape {self.shape}") from None

    def labels(self) -> list[str]:
        return ["{" + ",".join(map(str, index)) + "}" for index in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> BasisIndex:
        return self.elements[i]


def enumerate_basis(shape: CornerShape, dim_cap: int | None = None) -> Basis:
    """All l-subsets of {2, ..., k+l+1} in lexicographic order.

    >>> [list(index) for index in enumerate_basis(CornerShape(3, 1))]
    [[2], [3], [4], [5]]
    """
    cap = dimension_cap(dim_cap)
    if shape.dim > cap:
        raise CapacityExceeded(shape.dim, cap)
    elements = tuple(combinations(range(2, shape.n_generators + 2), shape.l))
    return Basis(shape, elements)


def _check_generator_index(shape: CornerShape, p: int):
    if not 1 <= p <= shape.n_generators:
        raise ValueError(f"generator index p={p} outside 1..{shape.n_generators}")


def _apply(shape: CornerShape, p: int, index: BasisIndex, q: QParam) -> dict[BasisIndex, Scalar]:
    members = set(index)
    p_in = p in members
    p1_in = p + 1 in members
    if not p_in and not p1_in:
        return {index: q.q}
    if p_in and p1_in:
        return {index: -q.q_inv}
    denom = q_int(p, q)
    if not p_in:
        terms = {index: -q.power(-p) / denom}
        # at p = 1 the swapped term has coefficient (0)_q/(1)_q = 0 and would
        # leave the index range, so the first generator acts diagonally
        if p > 1:
            swapped = tuple(sorted(members - {p + 1} | {p}))
            terms[swapped] = q_int(p - 1, q) / denom
        return terms
    swapped = tuple(sorted(members - {p} | {p + 1}))
    return {index: q.power(p) / denom, swapped: q_int(p + 1, q) / denom}


def apply_generator(shape: CornerShape, p: int, index: BasisIndex, q: QParam) -> dict[BasisIndex, Scalar]:
    """Expansion of generator p applied to one basis vector, as {index: coefficient}.

    At most two terms: a diagonal coefficient and, when the leg set changes,
    a term on the index with p and p+1 interchanged.
    """
    _check_generator_index(shape, p)
    index = tuple(index)
    if len(index) != shape.l or len(set(index)) != shape.l:
        raise ValueError(f"{index} is not an l-subset for shape {shape}")
    if any(not 2 <= i <= shape.n_generators + 1 for i in index):
        raise ValueError(f"{index} is outside {{2, ..., {shape.n_generators + 1}}}")
    ensure_generic(q, shape.n_generators + 1)
    return _apply(shape, p, tuple(sorted(index)), q)


def generator_matrix(
    shape: CornerShape, p: int, q: QParam, dim_cap: int | None = None, basis: Basis | None = None
) -> np.ndarray:
    """Dense matrix of generator p; row i is the expansion of basis vector i."""
    _check_generator_index(shape, p)
    ensure_generic(q, shape.n_generators + 1)
    basis = basis if basis is not None else enumerate_basis(shape, dim_cap)
    matrix = linalg.zeros(len(basis), exact=q.is_exact)
    for i, index in enumerate(basis):
        for target, coeff in _apply(shape, p, index, q).items():
            matrix[i, basis.position(target)] = coeff
    return matrix


def generator_matrices(shape: CornerShape, q: QParam, dim_cap: int | None = None) -> dict[int, np.ndarray]:
    basis = enumerate_basis(shape, dim_cap)
    return {p: generator_matrix(shape, p, q, basis=basis) for p in range(1, shape.n_generators + 1)}


def _context(shape: CornerShape, q: QParam, **extra: str) -> dict[str, str]:
    ctx = {"k": str(shape.k), "l": str(shape.l), "q": scalar_repr(q.q), "backend": q.backend}
    ctx.update(extra)
    return ctx


def verify_defining_relations(shape: CornerShape, q: QParam, tol: float = EPS_EQUALITY) -> VerificationReport:
    """Residuals of the braid, locality, and quadratic relations for every generator."""
    report = VerificationReport()
    ctx = _context(shape, q)
    sigma = generator_matrices(shape, q)
    n = shape.n_generators
    c = q.q - q.q_inv
    identity = linalg.eye(shape.dim, exact=q.is_exact)
    zero = q.zero()

    start = time.perf_counter()
    braid = zero
    for i in range(1, n):
        lhs = linalg.mat_chain(sigma[i], sigma[i + 1], sigma[i])
        rhs = linalg.mat_chain(sigma[i + 1], sigma[i], sigma[i + 1])
        braid = max(braid, linalg.max_abs(lhs - rhs))
    report.add("relations.braid", braid, q.is_exact, tol, ctx, time.perf_counter() - start)

    start = time.perf_counter()
    locality = zero
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            locality = max(locality, linalg.max_abs(linalg.commutator(sigma[i], sigma[j])))
    report.add("relations.locality", locality, q.is_exact, tol, ctx, time.perf_counter() - start)

    start = time.perf_counter()
    hecke = zero
    for i in range(1, n + 1):
        hecke = max(hecke, linalg.max_abs(linalg.mat_mul(sigma[i], sigma[i]) - c * sigma[i] - identity))
    report.add("relations.hecke", hecke, q.is_exact, tol, ctx, time.perf_counter() - start)
    return report


def expected_generator_trace(shape: CornerShape, q: QParam) -> Scalar:
    """Common trace of every generator: q*N1 - q^-1*N2 with N1, N2 counting leg sets."""
    n = shape.n_generators
    n1 = comb(n - 1, shape.l) if shape.l <= n - 1 else 0
    n2 = comb(n - 1, shape.l - 1) if shape.l >= 1 else 0
    return q.q * n1 - q.q_inv * n2


def verify_trace_identity(shape: CornerShape, q: QParam, tol: float = EPS_EQUALITY) -> VerificationReport:
    """Trace of the generator sum against (q*k - l/q) * dim, and per generator."""
    report = VerificationReport()
    ctx = _context(shape, q)
    sigma = generator_matrices(shape, q)
    expected = expected_generator_trace(shape, q)

    start = time.perf_counter()
    residual = max(abs(linalg.trace(m) - expected) for m in sigma.values())
    report.add("trace.generator", residual, q.is_exact, tol, ctx, time.perf_counter() - start)

    start = time.perf_counter()
    total = sum(linalg.trace(m) for m in sigma.values())
    target = (q.q * shape.k - q.q_inv * shape.l) * shape.dim
    report.add("trace.hamiltonian", abs(total - target), q.is_exact, tol, ctx, time.perf_counter() - start)
    return report


def verify_cyclic_conjugation(shape: CornerShape, q: QParam, tol: float = EPS_EQUALITY) -> VerificationReport:
    """Conjugation by the full generator product shifts every generator by one.

    Checks X sigma_i = sigma_{i+1} X for X = sigma_1 ... sigma_n after a hard
    invertibility sanity check on X, then the trace corollary: all generators
    share the trace q*N1 - q^-1*N2.
    """
    report = VerificationReport()
    ctx = _context(shape, q)
    sigma = generator_matrices(shape, q)
    n = shape.n_generators
    c = q.q - q.q_inv
    identity = linalg.eye(shape.dim, exact=q.is_exact)

    start = time.perf_counter()
    x = identity
    x_inv = identity
    for p in range(1, n + 1):
        x = linalg.mat_mul(x, sigma[p])
        # quadratic relation gives the generator inverse directly
        x_inv = linalg.mat_mul(sigma[p] - c * identity, x_inv)
    sanity = linalg.max_abs(linalg.mat_mul(x, x_inv) - identity)
    invertible = sanity == 0 if q.is_exact else sanity < tol
    if not invertible:
        raise SingularConjugator(f"conjugator sanity residual {sanity} at q={scalar_repr(q.q)}")

    residual = q.zero()
    for i in range(1, n):
        residual = max(
            residual,
            linalg.max_abs(linalg.mat_mul(x, sigma[i]) - linalg.mat_mul(sigma[i + 1], x)),
        )
    report.add("conjugation.similarity", residual, q.is_exact, tol, ctx, time.perf_counter() - start)

    start = time.perf_counter()
    expected = expected_generator_trace(shape, q)
    trace_residual = max(abs(linalg.trace(m) - expected) for m in sigma.values())
    report.add("conjugation.trace", trace_residual, q.is_exact, tol, ctx, time.perf_counter() - start)
    return report
