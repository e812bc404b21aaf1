"""Quantum families of maps on a finite quantum space.

A quantum family on (M, phi) indexed by a unital algebra B is the linear map
beta: M -> M (x) B determined by a coefficient matrix b over B,

    beta(e_j) = sum_i e_i (x) b[i, j],

written in a phi-orthonormal basis of M (conversions from raw linear maps go
through OrthoBasisData.change; the relation checks below are stated in the
orthonormal basis).  With m, lam and t_mat the structure data of that basis,
beta is

  * state-preserving   iff  sum_i phi(e_i) b[i,j] = phi(e_j) 1        (check_state_preserving)
  * multiplicative     iff  sum_{k,l} m[p,k,l] b[k,i] b[l,j]
                              = sum_q m[q,i,j] b[p,q]                 (check_multiplicative)
  * unital             iff  sum_j lam[j] b[i,j] = lam[i] 1            (check_unital)
  * a *-map            iff  (T (x) 1) conj(b) = b (T (x) 1)           (check_star_map)

and, when all four hold, it satisfies the Podles condition (the family is
"invertible") iff the block matrix b is unitary.  The Podles condition itself
is decided by an exact span computation, valid whether or not the relations
hold; the unitarity equivalence is kept as a cross-check.

Residuals are Frobenius norms of the full deviation tensors (coordinates of
the B-valued entries), so e.g. the all-zero family has unitality residual
exactly 1 over a scalar index algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebras import (
    OrthoBasisData, StarAlgebra, StateFunctional, from_blocks, orthonormalize,
    tensor, uniform_state,
)
from .errors import PreconditionError, ShapeError
from .groups import Permutation
from .linalg import Tolerance, matrix_rank

__all__ = [
    "QuantumFamily", "FamilyCheckReport", "check_state_preserving",
    "check_multiplicative", "check_unital", "check_star_map", "check_unitary",
    "check_podles", "check_family", "compose", "iterate", "trivial_family",
    "permutation_family", "family_from_magic_unitary", "multiplicative_witness",
]


@dataclass(frozen=True)
class QuantumFamily:
    """Coefficient matrix of a family beta: M -> M (x) B in the phi-ONB of M."""

    source: StarAlgebra
    phi: StateFunctional
    onb: OrthoBasisData
    index: StarAlgebra
    coeffs: np.ndarray  # (n, n, dim B): coeffs[i, j] = coords of b_{i,j} in B

    @property
    def n(self) -> int:
        return self.source.dim

    def __post_init__(self):
        n, nb = self.source.dim, self.index.dim
        if self.coeffs.shape != (n, n, nb):
            raise ShapeError(
                f"coefficients have shape {self.coeffs.shape}, expected {(n, n, nb)}")

    def phi_onb(self) -> np.ndarray:
        """Values of phi on the orthonormal basis."""
        return self.phi.coeffs @ self.onb.change

    def entry(self, i: int, j: int) -> np.ndarray:
        return self.coeffs[i, j]


def _freshly_orthonormalized(source: StarAlgebra, phi: StateFunctional,
                             tol: Tolerance) -> OrthoBasisData:
    return orthonormalize(source, phi, tol)


def trivial_family(source: StarAlgebra, phi: StateFunctional, index: StarAlgebra,
                   tol: Tolerance = Tolerance()) -> QuantumFamily:
    """b[i,j] = delta_ij 1_B: every member is the identity map."""
    onb = _freshly_orthonormalized(source, phi, tol)
    n = source.dim
    coeffs = np.zeros((n, n, index.dim), dtype=complex)
    for i in range(n):
        coeffs[i, i] = index.unit
    return QuantumFamily(source, phi, onb, index, coeffs)


def permutation_family(perm: Permutation, tol: Tolerance = Tolerance()) -> QuantumFamily:
    """The single classical permutation as a family on C^n with uniform state.

    Coefficients follow the magic-unitary convention b[i,j] = [sigma(j) = i],
    so composing the families of sigma and tau yields the family of the
    composite map sigma o tau.
    """
    n = perm.degree
    source = from_blocks([1] * n)
    phi = uniform_state(n)
    onb = _freshly_orthonormalized(source, phi, tol)
    index = from_blocks([1])
    coeffs = perm.matrix().reshape(n, n, 1)
    return QuantumFamily(source, phi, onb, index, coeffs)


def family_from_magic_unitary(p: np.ndarray, tol: Tolerance = Tolerance()) -> QuantumFamily:
    """Family on C^n (uniform state) from an n x n matrix of d x d projections.

    p has shape (n, n, d, d); the index algebra is M_d(C).  Valid input
    (projection entries, row and column sums the identity) yields a family
    passing every check here; validity itself is checked by the caller or
    via qsym.increasing.validate_magic.
    """
    p = np.asarray(p, dtype=complex)
    if p.ndim != 4 or p.shape[0] != p.shape[1] or p.shape[2] != p.shape[3]:
        raise ShapeError(f"magic unitary entries must form (n, n, d, d), got {p.shape}")
    n, d = p.shape[0], p.shape[2]
    source = from_blocks([1] * n)
    phi = uniform_state(n)
    onb = _freshly_orthonormalized(source, phi, tol)
    index = from_blocks([d])
    coeffs = p.reshape(n, n, d * d)
    return QuantumFamily(source, phi, onb, index, coeffs)


def _mul_entries(index: StarAlgebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pointwise products in B of two arrays of B-coordinate vectors.

    a, b have shape (..., dimB); output likewise, multiplying along the way.
    """
    return np.einsum("qxy,...x,...y->...q", index.mult, a, b)


def check_state_preserving(f: QuantumFamily) -> float:
    """|| sum_i phi(e_i) b[i,j] - phi(e_j) 1 || over all columns j."""
    phi_vals = f.phi_onb()
    dev = np.einsum("i,ijb->jb", phi_vals, f.coeffs) - np.outer(phi_vals, f.index.unit)
    return float(np.linalg.norm(dev))


def check_multiplicative(f: QuantumFamily) -> float:
    lhs, rhs = _multiplicative_sides(f)
    return float(np.linalg.norm(lhs - rhs))


def multiplicative_witness(f: QuantumFamily) -> tuple[float, tuple[int, int, int]]:
    """Residual plus the (p, i, j) index of the worst deviation."""
    lhs, rhs = _multiplicative_sides(f)
    dev = np.linalg.norm(lhs - rhs, axis=-1)  # (p, i, j)
    flat = int(np.argmax(dev))
    return float(np.linalg.norm(lhs - rhs)), tuple(int(x) for x in np.unravel_index(flat, dev.shape))


def _multiplicative_sides(f: QuantumFamily) -> tuple[np.ndarray, np.ndarray]:
    m = f.onb.m
    prods = np.einsum("qab,kia->qbki", f.index.mult, f.coeffs)
    prods = np.einsum("qbki,ljb->kiljq", prods, f.coeffs)  # b[k,i] b[l,j] in B
    lhs = np.einsum("pkl,kiljq->pijq", m, prods)
    rhs = np.einsum("qij,pqb->pijb", m, f.coeffs)
    return lhs, rhs


def check_unital(f: QuantumFamily) -> float:
    """|| sum_j lam[j] b[i,j] - lam[i] 1 || over all rows i."""
    lam = f.onb.lam
    dev = np.einsum("j,ijb->ib", lam, f.coeffs) - np.outer(lam, f.index.unit)
    return float(np.linalg.norm(dev))


def check_star_map(f: QuantumFamily) -> float:
    """|| (T (x) 1) conj(b) - b (T (x) 1) ||."""
    t = f.onb.t_mat
    bbar = np.einsum("xy,ijy->ijx", f.index.inv, np.conj(f.coeffs))
    lhs = np.einsum("ik,kjb->ijb", t, bbar)
    rhs = np.einsum("ikb,kj->ijb", f.coeffs, t)
    return float(np.linalg.norm(lhs - rhs))


def check_unitary(f: QuantumFamily) -> float:
    """|| b* b - 1 || + || b b* - 1 || for the block matrix b over B."""
    star = np.einsum("xy,ijy->ijx", f.index.inv, np.conj(f.coeffs))
    gram1 = np.einsum("qab,kia,kjb->ijq", f.index.mult, star, f.coeffs)
    gram2 = np.einsum("qab,ika,jkb->ijq", f.index.mult, f.coeffs, star)
    eye = np.einsum("ij,q->ijq", np.eye(f.n), f.index.unit)
    return float(np.linalg.norm(gram1 - eye) + np.linalg.norm(gram2 - eye))


def check_podles(f: QuantumFamily, tol: Tolerance = Tolerance()) -> tuple[int, bool]:
    """Rank of span{beta(e_j)(1 (x) x_k)} in M (x) B; full iff the family is invertible.

    Decided by an exact span computation (density is span equality in finite
    dimensions), independently of the relation checks.
    """
    n, nb = f.n, f.index.dim
    # beta(e_j)(1 (x) e_x) = sum_i e_i (x) (b[i,j] e_x)
    vecs = np.einsum("cax,ija->jxic", f.index.mult, f.coeffs).reshape(n * nb, n * nb)
    rank = matrix_rank(vecs, tol)
    return rank, rank == n * nb


@dataclass(frozen=True)
class FamilyCheckReport:
    state_preserving: float
    multiplicative: float
    unital: float
    star_map: float
    unitary: float
    podles_rank: int
    podles_full: bool
    state_preserved: bool

    def relations_ok(self, tol: Tolerance = Tolerance(), slack: float = 1.0) -> bool:
        bound = tol.eps_eq * slack
        return max(self.state_preserving, self.multiplicative,
                   self.unital, self.star_map) <= bound

    def all_ok(self, tol: Tolerance = Tolerance(), slack: float = 1.0) -> bool:
        return self.relations_ok(tol, slack) and self.unitary <= tol.eps_eq * slack \
            and self.podles_full


def check_family(f: QuantumFamily, tol: Tolerance = Tolerance()) -> FamilyCheckReport:
    rank, full = check_podles(f, tol)
    w1 = check_state_preserving(f)
    return FamilyCheckReport(
        state_preserving=w1,
        multiplicative=check_multiplicative(f),
        unital=check_unital(f),
        star_map=check_star_map(f),
        unitary=check_unitary(f),
        podles_rank=rank,
        podles_full=full,
        state_preserved=w1 <= tol.eps_eq,
    )


def _same_source(f: QuantumFamily, g: QuantumFamily) -> bool:
    return (f.source.dim == g.source.dim
            and np.allclose(f.source.mult, g.source.mult)
            and np.allclose(f.phi.coeffs, g.phi.coeffs)
            and np.allclose(f.onb.change, g.onb.change))


def compose(f: QuantumFamily, g: QuantumFamily) -> QuantumFamily:
    """Family composition over the tensor product of the index algebras.

    Coefficients b''[i,j] = sum_k b[i,k] (x) c[k,j].  Composition of the
    single-permutation families of sigma and tau gives sigma o tau.
    """
    if not _same_source(f, g):
        raise PreconditionError("families must share source, state and basis")
    index = tensor(f.index, g.index)
    coeffs = np.einsum("ikb,kjc->ijbc", f.coeffs, g.coeffs)
    n = f.n
    coeffs = coeffs.reshape(n, n, index.dim)
    return QuantumFamily(f.source, f.phi, f.onb, index, coeffs)


def iterate(f: QuantumFamily, n_times: int) -> QuantumFamily:
    """n-fold composition power of the family."""
    if n_times < 1:
        raise PreconditionError("need at least one factor")
    out = f
    for _ in range(n_times - 1):
        out = compose(out, f)
    return out
