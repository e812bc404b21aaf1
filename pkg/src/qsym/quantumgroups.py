"""Finite quantum groups: finite-dimensional Hopf *-algebra data.

A finite quantum group here is a StarAlgebra together with a coproduct
matrix, a counit, an antipode and the Haar state.  The compact-quantum-group
axioms are enforced in their finite-dimensional form: instead of density
conditions we require the two cancellation maps

    a (x) b  |->  Delta(a)(1 (x) b)      and      a (x) b  |->  (a (x) 1)Delta(b)

to be invertible.  Constructors re-validate every invariant and refuse to
emit objects that fail them.

Functionals on the algebra form the dual quantum group under convolution
w1 * w2 = (w1 (x) w2) o Delta; Cesaro means of convolution powers of a state
converge to an idempotent functional, which is the Haar state exactly when
the state "spreads" over the whole group.  Both an iterative averaging mode
and an exact mode (the eigenvalue-1 spectral projection of the convolution
operator) are provided.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups
from .algebras import (
    StarAlgebra, StarHom, StateFunctional, check_state, check_star_hom,
    from_blocks, function_algebra, gram_matrix, require_valid_algebra,
)
from .errors import ConvergenceError, InternalCheckError, PreconditionError, ShapeError
from .linalg import Tolerance, matrix_rank, nullspace

__all__ = [
    "FiniteQuantumGroup", "Functional", "validate_quantum_group",
    "cqg_function_algebra", "cqg_group_algebra", "dual", "integral_element",
    "iterated_coproduct", "convolve", "convolution_operator", "cesaro_mean",
    "solve_haar_state", "extract_group", "evaluation_hom",
    "function_restriction_hom", "group_algebra_quotient_hom",
]


@dataclass(frozen=True)
class FiniteQuantumGroup:
    """Algebra + coproduct + counit + antipode + Haar state."""

    alg: StarAlgebra
    delta: np.ndarray     # (n*n, n): Delta(e_j) = sum_{a,b} delta[a*n+b, j] e_a (x) e_b
    counit: np.ndarray    # (n,)
    antipode: np.ndarray  # (n, n)
    haar: StateFunctional

    @property
    def dim(self) -> int:
        return self.alg.dim

    def delta3(self) -> np.ndarray:
        """Coproduct reshaped to delta3[a, b, j]."""
        n = self.dim
        return self.delta.reshape(n, n, n)


@dataclass(frozen=True)
class Functional:
    """An arbitrary linear functional on the underlying algebra."""

    coeffs: np.ndarray

    def __call__(self, x) -> complex:
        return complex(np.dot(self.coeffs, x))


def validate_quantum_group(q: FiniteQuantumGroup, tol: Tolerance = Tolerance()) -> dict[str, float]:
    """Residuals for every Hopf/quantum-group invariant; raises on shape errors."""
    n = q.dim
    if q.delta.shape != (n * n, n):
        raise ShapeError("coproduct matrix must have shape (n^2, n)")
    if q.counit.shape != (n,) or q.antipode.shape != (n, n):
        raise ShapeError("counit/antipode shapes inconsistent")
    a = q.alg
    res = validate_hopf_data(a, q.delta, q.counit, q.antipode, tol)
    # Haar bi-invariance: (id (x) h) Delta = h(.) 1 = (h (x) id) Delta
    eye = np.eye(n)
    h = q.haar.coeffs
    left = np.kron(eye, h.reshape(1, n)) @ q.delta - np.outer(a.unit, h)
    right = np.kron(h.reshape(1, n), eye) @ q.delta - np.outer(a.unit, h)
    res["haar_invariance"] = float(max(np.linalg.norm(left), np.linalg.norm(right)))
    state = check_state(a, q.haar, tol)
    res["haar_unit"] = state.unit_residual
    res["haar_positive"] = float(max(0.0, -state.gram_min_eig))
    return res


def validate_hopf_data(a: StarAlgebra, delta, counit, antipode, tol: Tolerance = Tolerance()) -> dict[str, float]:
    """Coalgebra/antipode/cancellation residuals for (algebra, Delta, eps, S)."""
    n = a.dim
    eye = np.eye(n)
    d3 = delta.reshape(n, n, n)
    res: dict[str, float] = {}
    # Delta is a unital *-homomorphism into A (x) A.
    res["delta_unital"] = float(np.linalg.norm(delta @ a.unit - np.kron(a.unit, a.unit)))
    prod = np.einsum("abk,cdl,pac->bkpcdl", d3, d3, a.mult)
    prod = np.einsum("bkpcdl,qbd->pqkl", prod, a.mult)
    target = np.einsum("rkl,pqr->pqkl", a.mult, d3)
    res["delta_multiplicative"] = float(np.linalg.norm(prod - target))
    inv2 = np.kron(a.inv, a.inv)
    res["delta_star"] = float(np.linalg.norm(delta @ a.inv - inv2 @ np.conj(delta)))
    # coassociativity
    left = np.kron(delta, eye) @ delta
    right = np.kron(eye, delta) @ delta
    res["coassociativity"] = float(np.linalg.norm(left - right))
    # counit laws
    eps_row = counit.reshape(1, n)
    res["counit"] = float(max(
        np.linalg.norm(np.kron(eps_row, eye) @ delta - eye),
        np.linalg.norm(np.kron(eye, eps_row) @ delta - eye),
    ))
    # antipode law m(S (x) id)Delta = eps(.)1 = m(id (x) S)Delta
    mmat = a.mult_matrix()
    law1 = mmat @ np.kron(antipode, eye) @ delta - np.outer(a.unit, counit)
    law2 = mmat @ np.kron(eye, antipode) @ delta - np.outer(a.unit, counit)
    res["antipode"] = float(max(np.linalg.norm(law1), np.linalg.norm(law2)))
    # cancellation maps a(x)b -> Delta(a)(1(x)b), a(x)b -> (a(x)1)Delta(b)
    t1 = np.einsum("kla,qlb->kqab", d3, a.mult).reshape(n * n, n * n)
    t2 = np.einsum("klb,pka->plab", d3, a.mult).reshape(n * n, n * n)
    res["cancellation"] = float(max(
        0.0,
        tol.eps_rank - _relative_min_singular(t1),
        tol.eps_rank - _relative_min_singular(t2),
    ))
    return res


def _relative_min_singular(m: np.ndarray) -> float:
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0.0
    return float(s[-1] / s[0])


def require_valid_quantum_group(q: FiniteQuantumGroup, tol: Tolerance = Tolerance(),
                                what: str = "quantum group") -> FiniteQuantumGroup:
    require_valid_algebra(q.alg, tol, what=f"{what} algebra")
    res = validate_quantum_group(q, tol)
    bad = {k: v for k, v in res.items() if v > tol.eps_eq * 1000}
    if bad:
        raise InternalCheckError(f"{what} fails invariants: {bad}")
    return q


def cqg_function_algebra(g: groups.FiniteGroup) -> FiniteQuantumGroup:
    """C(G) for a finite group: Delta d_g = sum_{ab=g} d_a (x) d_b."""
    n = g.order
    alg = function_algebra(g)
    delta = np.zeros((n * n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            delta[a * n + b, g.mul(a, b)] = 1.0
    counit = np.zeros(n, dtype=complex)
    counit[g.identity] = 1.0
    antipode = np.zeros((n, n), dtype=complex)
    for a in range(n):
        antipode[g.inv(a), a] = 1.0
    haar = StateFunctional(np.full(n, 1.0 / n, dtype=complex))
    q = FiniteQuantumGroup(alg, delta, counit, antipode, haar)
    return require_valid_quantum_group(q)


def cqg_group_algebra(g: groups.FiniteGroup) -> FiniteQuantumGroup:
    """Group algebra C*(G): group-like basis, Delta u_g = u_g (x) u_g."""
    n = g.order
    mult = np.zeros((n, n, n), dtype=complex)
    inv = np.zeros((n, n), dtype=complex)
    unit = np.zeros(n, dtype=complex)
    unit[g.identity] = 1.0
    for a in range(n):
        inv[g.inv(a), a] = 1.0
        for b in range(n):
            mult[g.mul(a, b), a, b] = 1.0
    alg = StarAlgebra(mult, unit, inv, blocks=None)
    delta = np.zeros((n * n, n), dtype=complex)
    for a in range(n):
        delta[a * n + a, a] = 1.0
    counit = np.ones(n, dtype=complex)
    antipode = np.zeros((n, n), dtype=complex)
    for a in range(n):
        antipode[g.inv(a), a] = 1.0
    haar = StateFunctional(unit.copy())
    q = FiniteQuantumGroup(alg, delta, counit, antipode, haar)
    return require_valid_quantum_group(q)


def integral_element(q: FiniteQuantumGroup, tol: Tolerance = Tolerance()) -> np.ndarray:
    """The element t with x t = eps(x) t = t x and eps(t) = 1."""
    n = q.dim
    eye = np.eye(n)
    rows = []
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = 1.0
        eps_k = q.counit[k]
        rows.append(q.alg.lmul(e) - eps_k * eye)
        rows.append(q.alg.rmul(e) - eps_k * eye)
    ns = nullspace(np.vstack(rows), tol, floor=1.0)
    if ns.dim != 1:
        raise InternalCheckError(f"integral element space has dimension {ns.dim}, expected 1")
    t = ns.basis[:, 0]
    scale = complex(np.dot(q.counit, t))
    if abs(scale) < tol.eps_rank:
        raise InternalCheckError("integral element is annihilated by the counit")
    return t / scale


def dual(q: FiniteQuantumGroup, tol: Tolerance = Tolerance()) -> FiniteQuantumGroup:
    """Dual quantum group on A*: convolution product, transposed structure."""
    n = q.dim
    d3 = q.delta3()
    mult_hat = np.transpose(d3, (2, 0, 1)).copy()   # (e^a e^b)(e_j) = Delta(e_j)[a,b]
    unit_hat = q.counit.copy()
    inv_hat = (np.conj(q.alg.inv) @ q.antipode).T   # f*(x) = conj(f(S(x)*))
    delta_hat = q.alg.mult.transpose(1, 2, 0).reshape(n * n, n)
    counit_hat = q.alg.unit.copy()
    antipode_hat = q.antipode.T.copy()
    t = integral_element(q, tol)
    haar_hat = StateFunctional(t)
    alg_hat = StarAlgebra(mult_hat, unit_hat, inv_hat, blocks=None)
    qhat = FiniteQuantumGroup(alg_hat, delta_hat, counit_hat, antipode_hat, haar_hat)
    return require_valid_quantum_group(qhat, tol, what="dual quantum group")


def iterated_coproduct(q: FiniteQuantumGroup, n_factors: int) -> np.ndarray:
    """Matrix of the iterated coproduct A -> A^{(x) n_factors}, left-nested."""
    if n_factors < 1:
        raise PreconditionError("need at least one tensor factor")
    n = q.dim
    mat = np.eye(n, dtype=complex)
    for k in range(1, n_factors):
        mat = np.kron(q.delta, np.eye(n ** (k - 1), dtype=complex)) @ mat
    return mat


def convolve(q: FiniteQuantumGroup, w1: Functional | StateFunctional,
             w2: Functional | StateFunctional) -> Functional:
    """(w1 (x) w2) o Delta."""
    row = np.kron(w1.coeffs, w2.coeffs)
    return Functional(row @ q.delta)


def convolution_operator(q: FiniteQuantumGroup, w: Functional | StateFunctional) -> np.ndarray:
    """Matrix M with (u * w) = u @ M for row functionals u."""
    n = q.dim
    return np.einsum("abj,b->aj", q.delta3(), w.coeffs)


def is_state(q: FiniteQuantumGroup, w, tol: Tolerance = Tolerance()) -> bool:
    rep = check_state(q.alg, StateFunctional(w.coeffs), tol)
    return rep.unital and rep.positive


def cesaro_mean(q: FiniteQuantumGroup, w: Functional | StateFunctional,
                tol: float = 1e-7, max_iter: int = 10000,
                mode: str = "iterative") -> Functional:
    """Cesaro limit of convolution powers of a state.

    mode="iterative": average w, w*w, ... until consecutive means differ by
    at most tol; raises ConvergenceError with the final residual when the
    budget runs out (the plain averages converge like 1/N).
    mode="exact": the eigenvalue-1 spectral projection of the convolution
    operator, which gives the limit directly.

    Either way the result is convolution-idempotent.
    """
    if not is_state(q, w):
        raise PreconditionError("Cesaro mean requires a state (unital, positive)")
    if mode == "exact":
        m = convolution_operator(q, w)
        eye = np.eye(q.dim)
        right = nullspace(m - eye, floor=1.0).basis   # ker(M - I)
        left = nullspace((m - eye).conj().T, floor=1.0).basis
        if right.shape[1] == 0:
            raise InternalCheckError("convolution operator has no fixed vector")
        pairing = left.conj().T @ right
        proj = right @ np.linalg.solve(pairing, left.conj().T)
        limit = Functional(q.counit @ proj)
        _check_idempotent(q, limit, 100 * Tolerance().eps_eq)
        return limit
    if mode != "iterative":
        raise PreconditionError(f"unknown mode {mode!r}")
    current = np.asarray(w.coeffs, dtype=complex)
    total = current.copy()
    mean_prev = current.copy()
    m = convolution_operator(q, w)
    residual = np.inf
    for n_terms in range(2, max_iter + 2):
        current = current @ m
        total += current
        mean = total / n_terms
        residual = float(np.linalg.norm(mean - mean_prev))
        mean_prev = mean
        if residual > tol:
            continue
        # successive differences shrink faster than the distance to the
        # limit, so insist on the idempotency certificate as well
        limit = Functional(mean)
        idem = float(np.linalg.norm(convolve(q, limit, limit).coeffs - mean))
        if idem <= 10 * tol:
            return limit
        residual = idem
    raise ConvergenceError(
        f"Cesaro mean did not converge in {max_iter} iterations", residual=residual)


def _check_idempotent(q: FiniteQuantumGroup, w: Functional, bound: float) -> None:
    res = float(np.linalg.norm(convolve(q, w, w).coeffs - w.coeffs))
    if res > bound:
        raise InternalCheckError(f"Cesaro limit is not idempotent (residual {res:.3e})")


def solve_haar_state(alg: StarAlgebra, delta: np.ndarray, tol: Tolerance = Tolerance()) -> StateFunctional:
    """The unique bi-invariant state for (alg, delta), by a linear solve."""
    n = alg.dim
    d3 = delta.reshape(n, n, n)
    # (id (x) h)Delta(e_j) = h(e_j) 1  and  (h (x) id)Delta(e_j) = h(e_j) 1
    rows_left = np.einsum("klj->jkl", d3).reshape(n * n, n) \
        - np.einsum("k,jl->jkl", alg.unit, np.eye(n)).reshape(n * n, n)
    rows_right = np.einsum("lkj->jkl", d3).reshape(n * n, n) \
        - np.einsum("k,jl->jkl", alg.unit, np.eye(n)).reshape(n * n, n)
    ns = nullspace(np.vstack([rows_left, rows_right]), tol, floor=1.0)
    if ns.dim != 1:
        raise InternalCheckError(f"invariant-state space has dimension {ns.dim}, expected 1")
    h = ns.basis[:, 0]
    scale = complex(np.dot(h, alg.unit))
    if abs(scale) < tol.eps_rank:
        raise InternalCheckError("invariant functional vanishes on the unit")
    return StateFunctional(h / scale)


def extract_group(q: FiniteQuantumGroup, tol: Tolerance = Tolerance(),
                  rng: np.random.Generator | None = None) -> groups.FiniteGroup:
    """Recover the finite group underlying a commutative quantum group.

    Finds the minimal idempotents (points), then reads the group law off the
    coproduct pairing.  Raises if the algebra is not commutative.
    """
    if not q.alg.is_commutative(tol):
        raise PreconditionError("extract_group needs a commutative algebra")
    n = q.dim
    rng = rng or np.random.default_rng(1234)
    # generic self-adjoint element separates the points
    for _ in range(8):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x = x + q.alg.star(x)
        evals, evecs = np.linalg.eig(q.alg.lmul(x))
        if np.min(np.abs(evals[:, None] - evals[None, :]) + np.eye(n)) > 1e-6:
            break
    else:
        raise InternalCheckError("could not separate points of the commutative algebra")
    idems = []
    for i in range(n):
        v = evecs[:, i]
        v2 = q.alg.mul(v, v)
        scale = (v.conj() @ v2) / (v.conj() @ v)
        if abs(scale) < tol.eps_rank:
            raise InternalCheckError("eigenvector is nilpotent; algebra not semisimple?")
        idems.append(v / scale)
    idems = _sort_canonically(idems)
    # characters: chi_i(a) with a p_i = chi_i(a) p_i
    chars = []
    for p in idems:
        k = int(np.argmax(np.abs(p)))
        rows = q.alg.rmul(p)  # a -> coords of a*p
        chars.append(rows[k, :] / p[k])
    chars = np.array(chars)
    # group law from the coproduct: x*y = z iff (chi_x (x) chi_y) Delta(p_z) = 1
    d3 = q.delta3()
    cayley = -np.ones((n, n), dtype=int)
    for x in range(n):
        for y in range(n):
            vals = [abs(np.einsum("ab,a,b->", d3[:, :, :] @ idems[z], chars[x], chars[y]))
                    for z in range(n)]
            z = int(np.argmax(vals))
            if vals[z] < 0.5:
                raise InternalCheckError("coproduct pairing does not define a group law")
            cayley[x, y] = z
    ident = int(np.argmax([abs(np.dot(q.counit, p)) for p in idems]))
    g = groups.FiniteGroup(cayley, ident)
    groups.validate_group(g)
    return g


def _sort_canonically(vectors: list[np.ndarray]) -> list[np.ndarray]:
    keys = []
    for v in vectors:
        keys.append(tuple(np.round(np.real(v), 6)) + tuple(np.round(np.imag(v), 6)))
    order = sorted(range(len(vectors)), key=lambda i: keys[i], reverse=True)
    return [vectors[i] for i in order]


def evaluation_hom(q: FiniteQuantumGroup, element_indices) -> StarHom:
    """The hom C(G) -> C^k evaluating at the given group elements."""
    idx = [int(i) for i in element_indices]
    target = from_blocks([1] * len(idx))
    matrix = np.zeros((len(idx), q.dim), dtype=complex)
    for row, g in enumerate(idx):
        matrix[row, g] = 1.0
    hom = StarHom(q.alg, target, matrix)
    rep = check_star_hom(hom)
    if not rep.ok():
        raise PreconditionError("evaluation data does not define a *-homomorphism")
    return hom


def function_restriction_hom(q: FiniteQuantumGroup, g: groups.FiniteGroup,
                             subgroup_elems) -> tuple[StarHom, FiniteQuantumGroup]:
    """Restriction C(G) -> C(H) for a subgroup H, plus C(H) as a quantum group."""
    h_group, elems = groups.subgroup_as_group(g, subgroup_elems)
    target_q = cqg_function_algebra(h_group)
    matrix = np.zeros((h_group.order, g.order), dtype=complex)
    for row, elem in enumerate(elems):
        matrix[row, elem] = 1.0
    return StarHom(q.alg, target_q.alg, matrix), target_q


def group_algebra_quotient_hom(q: FiniteQuantumGroup, g: groups.FiniteGroup,
                               normal_subgroup) -> tuple[StarHom, FiniteQuantumGroup]:
    """Quotient map C*(G) -> C*(G/S) for a normal subgroup S."""
    quot, coset_of = groups.quotient_map(g, normal_subgroup)
    target_q = cqg_group_algebra(quot)
    matrix = np.zeros((quot.order, g.order), dtype=complex)
    for elem in range(g.order):
        matrix[coset_of[elem], elem] = 1.0
    return StarHom(q.alg, target_q.alg, matrix), target_q


def hom_rank(h: StarHom, tol: Tolerance = Tolerance()) -> int:
    return matrix_rank(h.matrix, tol)
