"""Open-chain Hamiltonians on corner representations and their spectra.

The traceless Hamiltonian is the sum of all generator matrices shifted by
(q*k - l/q) times the identity.  Its spectrum does not depend on q: for the
two-row shapes it is conjugate, via an explicit bidiagonal triangular
matrix, to the adjacency matrix of a path graph, whose eigenvalues are the
classical cosines; general corner shapes pick up the l-fold sums of those
cosines through the wedge construction.  This module builds the matrices,
predicts the spectra, produces explicit eigenvectors, and verifies it all
numerically against an independent dense eigensolver.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import linalg
from .corner import Basis, CornerShape, dimension_cap, enumerate_basis, generator_matrices
from .errors import CapacityExceeded, DegenerateWedge
from .reports import VerificationReport
from .scalars import EPS_EQUALITY, QParam, Scalar, ensure_generic, q_int, scalar_repr

#: q values used for isospectrality sweeps; |q| near 1 included on purpose
ISOSPECTRAL_Q_GRID = (0.6, 1.0, 1.1, 1.5, 2.0, 3.0)

#: dimension ceiling for the full annihilating-polynomial check
ANNIHILATOR_DIM_CAP = 35


def hamiltonian_shift(shape: CornerShape, q: QParam) -> Scalar:
    """The scalar q*k - l/q removed to make the Hamiltonian traceless."""
    return q.q * shape.k - q.q_inv * shape.l


def build_hamiltonian(shape: CornerShape, q: QParam, dim_cap: int | None = None) -> np.ndarray:
    """Sum of all generator matrices minus the traceless shift."""
    sigma = generator_matrices(shape, q, dim_cap)
    total = sum(sigma.values())
    return total - hamiltonian_shift(shape, q) * linalg.eye(shape.dim, exact=q.is_exact)


def two_row_hamiltonian(k: int, q: QParam) -> np.ndarray:
    """Closed form of the Hamiltonian for the two-row shape (k, 1).

    Tridiagonal plus a corner term, assembled directly from q-integer
    ratios; agrees entrywise with ``build_hamiltonian((k, 1), q)``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    ensure_generic(q, k + 1)
    matrix = linalg.zeros(k + 1, exact=q.is_exact)
    for p in range(2, k + 2):
        denom = q_int(p, q)
        matrix[p - 2, p - 1] = q_int(p + 1, q) / denom
        matrix[p - 1, p - 2] = q_int(p - 1, q) / denom
        matrix[p - 2, p - 2] = -1 / (denom * q_int(p - 1, q))
    matrix[k, k] = q_int(k, q) / q_int(k + 1, q)
    return matrix


def path_adjacency(k: int, exact: bool = True) -> np.ndarray:
    """Adjacency matrix of the path graph on k+1 nodes.

    This is the large-q limit of the diagonally rescaled two-row
    Hamiltonian; its eigenvalues are 2*cos(pi*p/(k+2)), p = 1..k+1.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    matrix = linalg.zeros(k + 1, exact=exact)
    one = linalg.eye(1, exact=exact)[0, 0]
    for i in range(k):
        matrix[i, i + 1] = one
        matrix[i + 1, i] = one
    return matrix


def intertwiner_matrix(k: int, q: QParam) -> np.ndarray:
    """Upper bidiagonal intertwiner between the two-row Hamiltonian and the path.

    Diagonal 1/(p-1)_q for rows p = 2..k+2 and superdiagonal -1/(p)_q;
    invertible whenever q is generic.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    ensure_generic(q, k + 1)
    matrix = linalg.zeros(k + 1, exact=q.is_exact)
    for p in range(2, k + 3):
        matrix[p - 2, p - 2] = 1 / q_int(p - 1, q)
    for p in range(2, k + 2):
        matrix[p - 2, p - 1] = -1 / q_int(p, q)
    return matrix


def _context(shape: CornerShape, q: QParam, **extra: str) -> dict[str, str]:
    ctx = {"k": str(shape.k), "l": str(shape.l), "q": scalar_repr(q.q), "backend": q.backend}
    ctx.update(extra)
    return ctx


def verify_intertwiner(k: int, q: QParam, tol: float = EPS_EQUALITY) -> VerificationReport:
    """Residual of H(q) C(q) - C(q) P for the path adjacency P."""
    report = VerificationReport()
    start = time.perf_counter()
    shape = CornerShape(k, 1)
    h = build_hamiltonian(shape, q)
    c = intertwiner_matrix(k, q)
    p = path_adjacency(k, exact=q.is_exact)
    residual = linalg.max_abs(linalg.mat_mul(h, c) - linalg.mat_mul(c, p))
    report.add("intertwiner.residual", residual, q.is_exact, tol, _context(shape, q), time.perf_counter() - start)
    return report


def verify_large_q_limit(
    k: int, q_values: tuple[float, ...] = (10.0, 100.0, 1000.0), tol: float = 1e-3
) -> VerificationReport:
    """Diagonal rescaling of the two-row Hamiltonian approaches the path matrix.

    Conjugating by diag(1, q, q^2, ...) and measuring the entrywise distance
    to the path adjacency: the distance must not increase along ``q_values``
    and must fall below ``tol`` at the largest q.  Deviations are evaluated
    in exact rational arithmetic: at the largest q the true distance sits
    closer to the threshold than double precision can resolve, so a float
    evaluation would fail on rounding noise alone.
    """
    if len(q_values) < 1 or any(b <= a for a, b in zip(q_values, q_values[1:])):
        raise ValueError("q_values must be strictly increasing")
    report = VerificationReport()
    start = time.perf_counter()
    shape = CornerShape(k, 1)
    target = path_adjacency(k, exact=True)
    deviations = []
    for value in q_values:
        q = QParam.exact(Fraction(value))
        h = build_hamiltonian(shape, q)
        rescaled = linalg.zeros(k + 1, exact=True)
        for i in range(k + 1):
            for j in range(k + 1):
                rescaled[i, j] = h[i, j] * q.power(i - j)
        deviations.append(linalg.max_abs(rescaled - target))
    elapsed = time.perf_counter() - start
    ctx = {
        "k": str(k),
        "l": "1",
        "q": ";".join(repr(v) for v in q_values),
        "backend": "exact",
        "deviations": ";".join(repr(float(d)) for d in deviations),
    }
    threshold = Fraction(tol)
    monotone = all(b <= a for a, b in zip(deviations, deviations[1:]))
    report.add("limit.monotone", deviations[-1], True, tol, ctx, elapsed, passed=monotone)
    report.add("limit.final", deviations[-1], True, tol, ctx, elapsed, passed=deviations[-1] < threshold)
    return report


@dataclass(frozen=True)
class SpectrumPrediction:
    """Closed-form eigenvalue multiset with the index tuples that produce it."""

    shape: CornerShape
    entries: tuple[tuple[tuple[int, ...], float], ...]

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([value for _, value in self.entries])

    def __len__(self) -> int:
        return len(self.entries)


def predicted_spectrum(shape: CornerShape, dim_cap: int | None = None) -> SpectrumPrediction:
    """Eigenvalues as l-fold sums of 2*cos(pi*m/(k+l+1)) over increasing tuples.

    Sorted ascending; the multiset has size binomial(k+l, l) and sums to zero.
    """
    cap = dimension_cap(dim_cap)
    if shape.dim > cap:
        raise CapacityExceeded(shape.dim, cap)
    n1 = shape.n_boxes
    entries = []
    for m_tuple in combinations(range(1, shape.n_generators + 1), shape.l):
        value = sum(2.0 * math.cos(math.pi * m / n1) for m in m_tuple)
        entries.append((m_tuple, value))
    entries.sort(key=lambda item: (item[1], item[0]))
    return SpectrumPrediction(shape, tuple(entries))


def numeric_spectrum(
    shape: CornerShape, q: QParam, dim_cap: int | None = None, imag_tol: float = 1e-8
) -> np.ndarray:
    """Independent oracle: dense eigensolve of the Hamiltonian in floats.

    Uses a general (non-symmetric) solver and validates that the spectrum is
    real within ``imag_tol`` before discarding imaginary parts.
    """
    h = linalg.to_float(build_hamiltonian(shape, q.as_approximate(), dim_cap))
    values = np.linalg.eigvals(h)
    worst = float(np.max(np.abs(values.imag))) if values.size else 0.0
    if worst > imag_tol:
        raise ArithmeticError(f"eigenvalues have imaginary part {worst} > {imag_tol}")
    return np.sort(values.real)


@dataclass(frozen=True)
class EigenSystem:
    """Explicit eigenpairs of a two-row Hamiltonian, ordered by mode number.

    Vectors are unit-norm columns; ``residuals[m-1]`` records
    ||H v - lambda v|| for mode m.
    """

    k: int
    eigenvalues: tuple[float, ...]
    vectors: tuple[np.ndarray, ...]
    residuals: tuple[float, ...]


def two_row_eigensystem(k: int, q: QParam) -> EigenSystem:
    """Eigenpairs of the (k, 1) Hamiltonian from sine vectors of the path.

    The path adjacency has eigenvector components sin(pi*m*j/(k+2)) with
    eigenvalue 2*cos(pi*m/(k+2)); pushing them through the intertwiner gives
    eigenvectors of the Hamiltonian at any generic q.
    """
    qf = q.as_approximate()
    ensure_generic(qf, k + 1)
    h = linalg.to_float(build_hamiltonian(CornerShape(k, 1), qf))
    c = linalg.to_float(intertwiner_matrix(k, qf))
    n1 = k + 2
    eigenvalues = []
    vectors = []
    residuals = []
    for m in range(1, k + 2):
        sine = np.array([math.sin(math.pi * m * j / n1) for j in range(1, k + 2)])
        vec = c @ sine
        norm = float(np.linalg.norm(vec))
        if norm < 1e-12:
            raise DegenerateWedge(f"intertwined sine vector collapsed for mode m={m}")
        vec = vec / norm
        value = 2.0 * math.cos(math.pi * m / n1)
        eigenvalues.append(value)
        vectors.append(vec)
        residuals.append(float(np.linalg.norm(h @ vec - value * vec)))
    return EigenSystem(k, tuple(eigenvalues), tuple(vectors), tuple(residuals))


def wedge_eigenvector(basis: Basis, columns: np.ndarray, m_tuple: tuple[int, ...]) -> np.ndarray:
    """Coordinates on the corner basis of a wedge of two-row eigenvectors.

    The coefficient on basis vector I is the l x l minor of the eigenvector
    matrix with rows picked by I and columns by the mode tuple; this is the
    wedge-and-relabel construction evaluated without materializing the
    tensor power.
    """
    cols = [m - 1 for m in m_tuple]
    out = np.empty(len(basis))
    for i, index in enumerate(basis):
        rows = [label - 2 for label in index]
        out[i] = np.linalg.det(columns[np.ix_(rows, cols)])
    return out


def verify_spectrum(
    shape: CornerShape,
    q: QParam,
    tol_eigenvalues: float = 1e-8,
    tol_eigenvectors: float = EPS_EQUALITY,
    tol_annihilator: float = 1e-6,
    dim_cap: int | None = None,
) -> VerificationReport:
    """Predicted cosine spectrum against the eigensolver and explicit eigenvectors.

    Three residuals: sorted numeric eigenvalues vs the prediction, the worst
    relative residual of the wedged explicit eigenvectors, and (for
    dimensions up to the annihilator cap) the scaled norm of the product of
    (H - lambda) over the whole predicted multiset.
    """
    report = VerificationReport()
    ctx = _context(shape, q)
    prediction = predicted_spectrum(shape, dim_cap)

    start = time.perf_counter()
    numeric = numeric_spectrum(shape, q, dim_cap)
    residual = float(np.max(np.abs(numeric - prediction.eigenvalues))) if len(prediction) else 0.0
    report.add("spectrum.eigenvalues", residual, False, tol_eigenvalues, ctx, time.perf_counter() - start)

    start = time.perf_counter()
    h = linalg.to_float(build_hamiltonian(shape, q.as_approximate(), dim_cap))
    basis = enumerate_basis(shape, dim_cap)
    base = two_row_eigensystem(shape.n_generators - 1, q)
    columns = np.column_stack(base.vectors)
    worst = 0.0
    for m_tuple, value in prediction.entries:
        vec = wedge_eigenvector(basis, columns, m_tuple)
        norm = float(np.linalg.norm(vec))
        if norm < 1e-10:
            raise DegenerateWedge(f"wedged eigenvector for modes {m_tuple} collapsed")
        worst = max(worst, float(np.linalg.norm(h @ vec - value * vec)) / norm)
    report.add("spectrum.eigenvectors", worst, False, tol_eigenvectors, ctx, time.perf_counter() - start)

    if shape.dim <= ANNIHILATOR_DIM_CAP:
        start = time.perf_counter()
        product = np.eye(shape.dim)
        scale = 1.0
        h_norm = float(np.linalg.norm(h))
        for _, value in prediction.entries:
            product = product @ (h - value * np.eye(shape.dim))
            # floor keeps the scaling meaningful when H itself is (near) zero
            scale *= max(1.0, h_norm + abs(value))
        residual = float(np.linalg.norm(product)) / scale
        report.add("spectrum.annihilator", residual, False, tol_annihilator, ctx, time.perf_counter() - start)
    return report


def verify_isospectral(shape: CornerShape, q1: QParam, q2: QParam, tol: float = EPS_EQUALITY) -> VerificationReport:
    """Sorted numeric spectra at two parameter values agree pairwise."""
    report = VerificationReport()
    start = time.perf_counter()
    first = numeric_spectrum(shape, q1)
    second = numeric_spectrum(shape, q2)
    residual = float(np.max(np.abs(first - second))) if first.size else 0.0
    ctx = _context(shape, q1, r=scalar_repr(q2.q))
    report.add("isospectral.pairwise", residual, False, tol, ctx, time.perf_counter() - start)
    return report


def commuting_family_check(
    k: int, q: QParam, r: QParam, others: tuple[QParam, ...] = (), tol: float = EPS_EQUALITY
) -> VerificationReport:
    """The intertwiner ratio family is simultaneously diagonalizable.

    Checks that N^-1 C(q) C(r)^-1 N is the diagonal of q-integer ratios
    (N the bidiagonal 1/-1 matrix), and that all products C(a) C(b)^-1 over
    the supplied parameter family commute with each other.
    """
    if any(p.is_exact != q.is_exact for p in (r, *others)):
        raise ValueError("all parameters in the family must share one backend")
    report = VerificationReport()
    exact = q.is_exact
    shape = CornerShape(k, 1)

    start = time.perf_counter()
    c_q = intertwiner_matrix(k, q)
    c_r_inv = linalg.invert(intertwiner_matrix(k, r))
    n_mat = linalg.zeros(k + 1, exact=exact)
    one = linalg.eye(1, exact=exact)[0, 0]
    for i in range(k + 1):
        n_mat[i, i] = one
    for i in range(k):
        n_mat[i, i + 1] = -one
    conjugated = linalg.mat_chain(linalg.invert(n_mat), c_q, c_r_inv, n_mat)
    expected = linalg.zeros(k + 1, exact=exact)
    for j in range(1, k + 2):
        expected[j - 1, j - 1] = q_int(j, r) / q_int(j, q)
    diag_residual = linalg.max_abs(conjugated - expected)
    ctx = _context(shape, q, r=scalar_repr(r.q))
    report.add("commuting.diagonal", diag_residual, exact, tol, ctx, time.perf_counter() - start)

    start = time.perf_counter()
    family = [q, r, *others]
    members = []
    for a in family:
        c_a = None
        for b in family:
            if a.q == b.q:
                continue
            if c_a is None:
                c_a = intertwiner_matrix(k, a)
            members.append(linalg.mat_mul(c_a, linalg.invert(intertwiner_matrix(k, b))))
    residual = q.zero()
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            residual = max(residual, linalg.max_abs(linalg.commutator(members[i], members[j])))
    grid_ctx = dict(ctx)
    grid_ctx["family"] = ",".join(scalar_repr(p.q) for p in family)
    report.add("commuting.commutators", residual, exact, tol, grid_ctx, time.perf_counter() - start)
    return report
