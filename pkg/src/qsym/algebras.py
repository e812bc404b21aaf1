"""Finite-dimensional *-algebras with distinguished faithful states.

A StarAlgebra is a structure-constant tensor plus a unit vector and an
involution matrix, all in a fixed canonical basis.  States are row vectors
of values on that basis.  `orthonormalize` produces the basis change to a
basis orthonormal for <x,y> = phi(x* y) together with the structure data in
that basis (the product tensor, the unit coordinates and the involution
matrix), which is what the quantum-family checks consume.

The canonical basis is never mutated: all derived data carries an explicit
change matrix, so downstream coefficient matrices stay unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups
from .errors import PreconditionError, ShapeError
from .linalg import Tolerance, matrix_rank, nullspace

__all__ = [
    "StarAlgebra", "StateFunctional", "StateReport", "OrthoBasisData",
    "StarHom", "HomReport", "from_blocks", "function_algebra", "scalar_algebra",
    "validate_algebra", "check_state", "orthonormalize", "tensor", "direct_sum",
    "check_star_hom", "center_dimension", "uniform_state", "trace_state",
    "random_faithful_state", "gram_matrix", "identity_hom",
]


@dataclass(frozen=True)
class StarAlgebra:
    """dim-n *-algebra: e_k e_l = sum_p mult[p,k,l] e_p, (e_j)* = sum_k inv[k,j] e_k."""

    mult: np.ndarray          # (n, n, n)
    unit: np.ndarray          # (n,)
    inv: np.ndarray           # (n, n)
    blocks: tuple[int, ...] | None = None

    @property
    def dim(self) -> int:
        return int(self.unit.shape[0])

    def mul(self, x, y) -> np.ndarray:
        return np.einsum("pkl,k,l->p", self.mult, x, y)

    def star(self, x) -> np.ndarray:
        return self.inv @ np.conj(x)

    def lmul(self, x) -> np.ndarray:
        """Matrix of left multiplication by x."""
        return np.einsum("pkl,k->pl", self.mult, x)

    def rmul(self, y) -> np.ndarray:
        """Matrix of right multiplication by y."""
        return np.einsum("pkl,l->pk", self.mult, y)

    def mult_matrix(self) -> np.ndarray:
        """Multiplication as a matrix A (x) A -> A, column index k*n+l."""
        n = self.dim
        return self.mult.reshape(n, n * n)

    def is_commutative(self, tol: Tolerance = Tolerance()) -> bool:
        return float(np.linalg.norm(self.mult - self.mult.transpose(0, 2, 1))) <= tol.eps_eq * 10


def validate_algebra(a: StarAlgebra, tol: Tolerance = Tolerance()) -> dict[str, float]:
    """Residuals for associativity, unit, involution; raises on bad shapes."""
    n = a.dim
    if a.mult.shape != (n, n, n) or a.inv.shape != (n, n):
        raise ShapeError("structure tensor shapes inconsistent with dim")
    if not (np.all(np.isfinite(a.mult)) and np.all(np.isfinite(a.unit)) and np.all(np.isfinite(a.inv))):
        raise ShapeError("structure data must be finite")
    m = a.mult
    assoc = np.einsum("qkl,pqm->pklm", m, m) - np.einsum("qlm,pkq->pklm", m, m)
    eye = np.eye(n)
    unit_l = np.einsum("pkl,k->pl", m, a.unit) - eye
    unit_r = np.einsum("pkl,l->pk", m, a.unit) - eye
    # (e_k e_l)* == e_l* e_k*
    anti_lhs = np.einsum("pq,qkl->pkl", a.inv, np.conj(m))
    anti_rhs = np.einsum("pab,al,bk->pkl", m, a.inv, a.inv)
    inv_sq = a.inv @ np.conj(a.inv) - eye
    return {
        "associativity": float(np.linalg.norm(assoc)),
        "unit": float(max(np.linalg.norm(unit_l), np.linalg.norm(unit_r))),
        "involution_antimult": float(np.linalg.norm(anti_lhs - anti_rhs)),
        "involution_squares": float(np.linalg.norm(inv_sq)),
    }


def require_valid_algebra(a: StarAlgebra, tol: Tolerance = Tolerance(), what: str = "algebra") -> StarAlgebra:
    res = validate_algebra(a, tol)
    worst = max(res.values())
    if worst > tol.eps_eq * 100:
        bad = {k: v for k, v in res.items() if v > tol.eps_eq * 100}
        raise PreconditionError(f"{what} fails structure checks: {bad}")
    return a


def from_blocks(blocks) -> StarAlgebra:
    """Multi-matrix algebra (+) M_{m_i}(C) in the matrix-unit basis.

    Basis order: blocks in sequence, units e_{kl} row-major inside a block.
    """
    blocks = tuple(int(b) for b in blocks)
    if len(blocks) == 0:
        raise PreconditionError("need at least one block")
    if any(b < 1 for b in blocks):
        raise PreconditionError("block sizes must be >= 1")
    n = sum(b * b for b in blocks)
    mult = np.zeros((n, n, n), dtype=complex)
    unit = np.zeros(n, dtype=complex)
    inv = np.zeros((n, n), dtype=complex)
    offset = 0
    for b in blocks:
        def idx(k, l, off=offset, m=b):
            return off + k * m + l
        for k in range(b):
            unit[idx(k, k)] = 1.0
            for l in range(b):
                inv[idx(l, k), idx(k, l)] = 1.0
                for p in range(b):
                    for q in range(b):
                        # e_{kl} e_{pq} = delta_{lp} e_{kq}
                        if l == p:
                            mult[idx(k, q), idx(k, l), idx(p, q)] = 1.0
        offset += b * b
    return StarAlgebra(mult, unit, inv, blocks=blocks)


def scalar_algebra() -> StarAlgebra:
    return from_blocks([1])


def function_algebra(g: groups.FiniteGroup) -> StarAlgebra:
    """Commutative algebra of functions on a finite group, delta-function basis."""
    groups.validate_group(g)
    return from_blocks([1] * g.order)


@dataclass(frozen=True)
class StateFunctional:
    """Linear functional given by its values on the canonical basis."""

    coeffs: np.ndarray  # (n,)

    def __call__(self, x) -> complex:
        return complex(np.dot(self.coeffs, x))


def uniform_state(n: int) -> StateFunctional:
    return StateFunctional(np.full(n, 1.0 / n, dtype=complex))


def trace_state(a: StarAlgebra) -> StateFunctional:
    """Normalized trace on a block algebra."""
    if a.blocks is None:
        raise PreconditionError("trace_state needs a block algebra")
    total = sum(a.blocks)
    coeffs = np.zeros(a.dim, dtype=complex)
    offset = 0
    for b in a.blocks:
        for k in range(b):
            coeffs[offset + k * b + k] = 1.0 / total
        offset += b * b
    return StateFunctional(coeffs)


def random_faithful_state(a: StarAlgebra, rng: np.random.Generator) -> StateFunctional:
    """Random faithful state on a block algebra: x -> sum_i Tr(rho_i x_i)."""
    if a.blocks is None:
        raise PreconditionError("random_faithful_state needs a block algebra")
    densities = []
    for b in a.blocks:
        z = rng.standard_normal((b, b)) + 1j * rng.standard_normal((b, b))
        rho = z @ z.conj().T + 0.1 * np.eye(b)
        densities.append(rho)
    total = sum(np.trace(rho).real for rho in densities)
    coeffs = np.zeros(a.dim, dtype=complex)
    offset = 0
    for b, rho in zip(a.blocks, densities):
        for k in range(b):
            for l in range(b):
                # phi(e_{kl}) = Tr(rho e_{kl}) = rho[l, k]
                coeffs[offset + k * b + l] = rho[l, k] / total
        offset += b * b
    return StateFunctional(coeffs)


def gram_matrix(a: StarAlgebra, phi: StateFunctional) -> np.ndarray:
    """G[i,j] = phi(e_i* e_j)."""
    return np.einsum("p,paj,ai->ij", phi.coeffs, a.mult, a.inv)


@dataclass(frozen=True)
class StateReport:
    unital: bool
    positive: bool
    faithful: bool
    unit_residual: float
    gram_min_eig: float
    hermitian_residual: float


def check_state(a: StarAlgebra, phi: StateFunctional, tol: Tolerance = Tolerance()) -> StateReport:
    g = gram_matrix(a, phi)
    herm = float(np.linalg.norm(g - g.conj().T))
    eigs = np.linalg.eigvalsh((g + g.conj().T) / 2)
    unit_res = abs(phi(a.unit) - 1.0)
    return StateReport(
        unital=unit_res <= tol.eps_eq * 10,
        positive=bool(eigs.min() >= -tol.eps_rank),
        faithful=bool(eigs.min() > tol.eps_rank) and herm <= tol.eps_eq * 100,
        unit_residual=float(unit_res),
        gram_min_eig=float(eigs.min()),
        hermitian_residual=herm,
    )


@dataclass(frozen=True)
class OrthoBasisData:
    """Structure data in a phi-orthonormal basis.

    change: columns are the new basis in canonical coordinates.
    m:      product tensor in the new basis.
    lam:    coordinates of the unit in the new basis.
    t_mat:  involution matrix in the new basis: e_l* = sum_k t_mat[k,l] e_k.
    """

    change: np.ndarray
    m: np.ndarray
    lam: np.ndarray
    t_mat: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.change.shape[0])

    def algebra(self) -> StarAlgebra:
        """The same algebra presented in the orthonormal basis."""
        return StarAlgebra(self.m, self.lam, self.t_mat)


def orthonormalize(a: StarAlgebra, phi: StateFunctional, tol: Tolerance = Tolerance()) -> OrthoBasisData:
    """Gram-Schmidt for <x,y> = phi(x* y); returns full structure data.

    Modified Gram-Schmidt with one re-orthogonalization pass: the involution
    matrix and the downstream relation checks are sensitive to basis quality.
    """
    report = check_state(a, phi, tol)
    if not report.faithful:
        raise PreconditionError(
            f"state is not faithful (min Gram eigenvalue {report.gram_min_eig:.3e})")
    n = a.dim
    g = gram_matrix(a, phi)
    g = (g + g.conj().T) / 2
    cols = []
    for i in range(n):
        v = np.zeros(n, dtype=complex)
        v[i] = 1.0
        for _ in range(2):  # one re-orthogonalization pass
            for q in cols:
                v = v - q * (q.conj() @ g @ v)
        nrm = np.sqrt((v.conj() @ g @ v).real)
        cols.append(v / nrm)
    change = np.column_stack(cols)
    change_inv = np.linalg.inv(change)
    prods = np.einsum("pab,ak,bl->pkl", a.mult, change, change)
    m_onb = np.einsum("qp,pkl->qkl", change_inv, prods)
    lam = change_inv @ a.unit
    t_mat = change_inv @ a.inv @ np.conj(change)
    return OrthoBasisData(change=change, m=m_onb, lam=lam, t_mat=t_mat)


def tensor(a: StarAlgebra, b: StarAlgebra) -> StarAlgebra:
    """Tensor product algebra; basis index (i,j) -> i*dim(b)+j."""
    na, nb = a.dim, b.dim
    n = na * nb
    mult = np.einsum("pki,qlj->pqklij", a.mult, b.mult).reshape(n, n, n)
    unit = np.kron(a.unit, b.unit)
    inv = np.kron(a.inv, b.inv)
    blocks = None
    if a.blocks is not None and b.blocks is not None and len(a.blocks) == 1 and len(b.blocks) == 1:
        blocks = (a.blocks[0] * b.blocks[0],)
    return StarAlgebra(mult, unit, inv, blocks=blocks)


def direct_sum(a: StarAlgebra, b: StarAlgebra) -> StarAlgebra:
    na, nb = a.dim, b.dim
    n = na + nb
    mult = np.zeros((n, n, n), dtype=complex)
    mult[:na, :na, :na] = a.mult
    mult[na:, na:, na:] = b.mult
    unit = np.concatenate([a.unit, b.unit])
    inv = np.zeros((n, n), dtype=complex)
    inv[:na, :na] = a.inv
    inv[na:, na:] = b.inv
    blocks = None
    if a.blocks is not None and b.blocks is not None:
        blocks = a.blocks + b.blocks
    return StarAlgebra(mult, unit, inv, blocks=blocks)


@dataclass(frozen=True)
class StarHom:
    """A linear map between algebras, in coordinates; claims to be a *-hom."""

    source: StarAlgebra
    target: StarAlgebra
    matrix: np.ndarray  # (target.dim, source.dim)

    def __call__(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=complex)

    def then(self, other: "StarHom") -> "StarHom":
        """other after self."""
        return StarHom(self.source, other.target, other.matrix @ self.matrix)


def identity_hom(a: StarAlgebra) -> StarHom:
    return StarHom(a, a, np.eye(a.dim, dtype=complex))


@dataclass(frozen=True)
class HomReport:
    multiplicative: float
    unital: float
    star: float

    @property
    def worst(self) -> float:
        return max(self.multiplicative, self.unital, self.star)

    def ok(self, tol: Tolerance = Tolerance()) -> bool:
        return self.worst <= tol.eps_eq * 100


def check_star_hom(h: StarHom) -> HomReport:
    """Residuals for multiplicativity, unitality and *-preservation."""
    s, t, f = h.source, h.target, h.matrix
    if f.shape != (t.dim, s.dim):
        raise ShapeError(f"hom matrix has shape {f.shape}, expected {(t.dim, s.dim)}")
    # h(e_k e_l) vs h(e_k) h(e_l)
    lhs = np.einsum("pa,akl->pkl", f, s.mult)
    rhs = np.einsum("pab,ak,bl->pkl", t.mult, f, f)
    mult_res = float(np.linalg.norm(lhs - rhs))
    unit_res = float(np.linalg.norm(f @ s.unit - t.unit))
    star_res = float(np.linalg.norm(f @ s.inv - t.inv @ np.conj(f)))
    return HomReport(mult_res, unit_res, star_res)


def is_surjective(h: StarHom, tol: Tolerance = Tolerance()) -> bool:
    return matrix_rank(h.matrix, tol) == h.target.dim


def center_dimension(a: StarAlgebra, tol: Tolerance = Tolerance()) -> int:
    """Dimension of {x : xy = yx for all y} by a rank computation."""
    n = a.dim
    rows = []
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = 1.0
        rows.append(a.lmul(e) - a.rmul(e))
    stacked = np.vstack(rows)
    return nullspace(stacked, tol).dim
