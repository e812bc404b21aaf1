"""Dense complex linear algebra with explicit tolerances.

Matrices are plain numpy arrays of complex128.  Every rank decision is made
relative to the largest singular value, so the integer-valued answers the
rest of the package depends on (kernel dimensions, ideal dimensions, span
ranks) are stable against roundoff.  All sizes in this package are small
(a few hundred rows at most), so everything is dense.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError

DEFAULT_EPS_EQ = 1e-9
DEFAULT_EPS_RANK = 1e-8


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds: entrywise equality and rank decisions."""

    eps_eq: float = DEFAULT_EPS_EQ
    eps_rank: float = DEFAULT_EPS_RANK

    def __post_init__(self):
        if not (self.eps_eq > 0 and self.eps_rank > 0):
            raise ValueError("tolerances must be strictly positive")


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-d complex array, rejecting NaN/Inf."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix entries must be finite")
    return m


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul shape mismatch: {a.shape} x {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    """Kronecker product; index (i,k),(j,l) -> (i*b.rows+k, j*b.cols+l)."""
    return np.kron(as_matrix(a), as_matrix(b))


def matrix_rank(a, tol: Tolerance = Tolerance()) -> int:
    a = as_matrix(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.eps_rank * s[0]))


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^ambient_dim given by orthonormal basis columns."""

    ambient_dim: int
    basis: np.ndarray  # shape (ambient_dim, dim), orthonormal columns

    def __post_init__(self):
        b = self.basis
        if b.shape[0] != self.ambient_dim:
            raise ShapeError("basis rows must equal ambient_dim")
        if b.shape[1] > self.ambient_dim:
            raise ShapeError("more basis vectors than ambient dimension")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def project(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return self.basis @ (self.basis.conj().T @ x)

    def contains(self, x, tol: Tolerance = Tolerance()) -> bool:
        x = np.asarray(x, dtype=complex)
        nrm = np.linalg.norm(x)
        if nrm == 0:
            return True
        return np.linalg.norm(x - self.project(x)) <= tol.eps_rank * nrm * 10

    def orthonormality_residual(self) -> float:
        g = self.basis.conj().T @ self.basis
        return float(np.linalg.norm(g - np.eye(self.dim)))


def full_space(n: int) -> Subspace:
    return Subspace(n, np.eye(n, dtype=complex))


def zero_space(n: int) -> Subspace:
    return Subspace(n, np.zeros((n, 0), dtype=complex))


def nullspace(a, tol: Tolerance = Tolerance(), floor: float = 0.0) -> Subspace:
    """Orthonormal basis of {x : ||a x|| <= eps_rank * ||a|| * ||x||}.

    `floor` sets an absolute scale below which singular values never count:
    pass the natural magnitude of the problem's coefficients when a matrix
    that is morally zero may carry roundoff (a purely relative threshold
    would find rank 1 in such a matrix).
    """
    a = as_matrix(a)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return full_space(cols)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    if s.size == 0 or s[0] == 0.0:
        return full_space(cols)
    rank = int(np.sum(s > tol.eps_rank * max(s[0], floor)))
    return Subspace(cols, vh[rank:].conj().T)


def image(a, tol: Tolerance = Tolerance()) -> Subspace:
    """Orthonormal basis of the column space of a."""
    a = as_matrix(a)
    rows = a.shape[0]
    if a.size == 0:
        return zero_space(rows)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return zero_space(rows)
    rank = int(np.sum(s > tol.eps_rank * s[0]))
    return Subspace(rows, u[:, :rank])


def intersect(u: Subspace, v: Subspace, tol: Tolerance = Tolerance()) -> Subspace:
    """U cap V, computed as the nullspace of the stacked complement projections."""
    if u.ambient_dim != v.ambient_dim:
        raise ShapeError("subspaces live in different ambient spaces")
    n = u.ambient_dim
    eye = np.eye(n, dtype=complex)
    stacked = np.vstack([eye - u.projector(), eye - v.projector()])
    return nullspace(stacked, tol)


def subspace_sum(u: Subspace, v: Subspace, tol: Tolerance = Tolerance()) -> Subspace:
    if u.ambient_dim != v.ambient_dim:
        raise ShapeError("subspaces live in different ambient spaces")
    return image(np.hstack([u.basis, v.basis]), tol)


def span(vectors, ambient_dim: int, tol: Tolerance = Tolerance()) -> Subspace:
    """Span of an iterable of coordinate vectors (rows or columns both fine)."""
    vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
    if not vecs:
        return zero_space(ambient_dim)
    return image(np.column_stack(vecs), tol)


def solve_least_squares(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = np.asarray(b, dtype=complex)
    sol, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    return sol


def same_span(u: Subspace, v: Subspace, tol: Tolerance = Tolerance()) -> bool:
    """Span equality via mutual projection residuals."""
    if u.ambient_dim != v.ambient_dim or u.dim != v.dim:
        return False
    return mutual_projection_residual(u, v) <= 10 * tol.eps_rank


def mutual_projection_residual(u: Subspace, v: Subspace) -> float:
    """max residual of projecting either basis onto the other subspace."""
    if u.dim == 0 and v.dim == 0:
        return 0.0
    r1 = np.linalg.norm(u.basis - v.project(u.basis)) if u.dim else 0.0
    r2 = np.linalg.norm(v.basis - u.project(v.basis)) if v.dim else 0.0
    return float(max(r1, r2))
