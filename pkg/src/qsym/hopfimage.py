"""Hopf images and generated quantum subgroups.

Given a finite quantum group A and a unital *-homomorphism L: A -> B, the
iterated convolutions

    L_n = (L (x) ... (x) L) o Delta^(n-1) : A -> B^(x) n

cut out the ideal J = intersection of all ker L_n.  The quotient S = A / J
carries a unique coproduct with Delta_S o pi = (pi (x) pi) o Delta, and L
factors as theta o pi.  S is the Hopf image of L: the smallest quantum
subgroup through which L passes.

Two independent algorithms compute J:

  * "kernel": accumulate ker L_1, ker L_1 ^ ker L_2, ... until the dimension
    is stable for a window of steps.  There is no a-priori certificate for
    when to stop, so this method is flagged as heuristic.  (Internally each
    L_n is row-compressed before tensoring, so nothing of size dim(B)^n is
    ever materialized.)
  * "coideal": the greatest fixed point of

        K_{t+1} = { x in K_t : Delta(x) in K_t (x) A + A (x) K_t,
                               A x A contained in K_t },       K_0 = ker L.

    Each ker L_n is a two-sided *-ideal and J satisfies
    (pi (x) pi) Delta(J) = 0, so J is exactly the largest ideal-coideal
    inside ker L; the iteration's dimensions strictly decrease until the
    fixed point, so it terminates with a certificate.

"both" runs the two and insists they agree in dimension and span; a
disagreement is a hard internal-consistency error, never silently resolved.

The same machinery yields the quantum subgroup generated by a family of
quantum subgroups (Hopf image of the direct sum of the subgroup
surjections), the quantum group generated by a quantum family of invertible
maps, and the Cesaro-mean test for inner faithfulness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import quantumgroups as qg
from .algebras import (
    StarAlgebra, StarHom, StateFunctional, check_star_hom, direct_sum,
    require_valid_algebra, tensor,
)
from .errors import (
    ConvergenceError, InternalCheckError, MethodDisagreementError,
    PreconditionError,
)
from .families import QuantumFamily
from .linalg import (
    Subspace, Tolerance, matrix_rank, mutual_projection_residual, nullspace,
)
from .quantumgroups import FiniteQuantumGroup, Functional, cesaro_mean

__all__ = [
    "HopfImageResult", "GeneratedSubgroupResult", "FamilyGenerationResult",
    "lambda_n", "hopf_image", "generated_subgroup", "inner_faithful",
    "dual_generated_dim", "generated_from_family",
]


@dataclass(frozen=True)
class HopfImageResult:
    ideal: Subspace                 # J inside A
    quotient: FiniteQuantumGroup    # S = A / J with its coproduct
    pi: StarHom                     # A -> S, surjective
    theta: StarHom                  # S -> B with theta o pi = L
    n_stabilized: int               # kernel depth / fixed-point iterations used
    method: str
    residuals: dict[str, float]

    @property
    def dim(self) -> int:
        return self.quotient.dim


def lambda_n(q: FiniteQuantumGroup, hom: StarHom, n: int) -> StarHom:
    """The n-fold convolution power (L (x) ... (x) L) o Delta^(n-1)."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    mat = hom.matrix
    out = mat
    target = hom.target
    for _ in range(n - 1):
        out = np.kron(out, mat) @ q.delta
        target = tensor(target, hom.target)
    return StarHom(q.alg, target, out)


def _row_compress(mat: np.ndarray, tol: Tolerance) -> np.ndarray:
    """A full-row-rank matrix with the same nullspace, at most dim-A rows."""
    if mat.shape[0] == 0:
        return mat
    _, s, vh = np.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((0, mat.shape[1]), dtype=complex)
    rank = int(np.sum(s > tol.eps_rank * s[0]))
    return vh[:rank]


def _kernel_method(q: FiniteQuantumGroup, hom: StarHom, tol: Tolerance,
                   window: int, max_depth: int) -> tuple[Subspace, int]:
    """Accumulated kernels of the convolution powers; heuristic stop rule."""
    compressed = _row_compress(hom.matrix, tol)
    stack = compressed
    dims = [nullspace(stack, tol).dim]
    depth = 1
    while depth < max_depth:
        depth += 1
        compressed = _row_compress(np.kron(compressed, hom.matrix) @ q.delta, tol)
        stack = _row_compress(np.vstack([stack, compressed]), tol)
        dims.append(nullspace(stack, tol).dim)
        if len(dims) >= window and len(set(dims[-window:])) == 1:
            return nullspace(stack, tol), depth
    raise ConvergenceError(f"kernel intersection did not stabilize within depth {max_depth}")


def _coideal_method(q: FiniteQuantumGroup, hom: StarHom,
                    tol: Tolerance) -> tuple[Subspace, int]:
    """Greatest ideal-coideal inside ker L, by a certified fixed-point iteration."""
    n = q.dim
    current = nullspace(hom.matrix, tol)
    iters = 0
    lmuls = [q.alg.lmul(_basis_vec(n, a)) for a in range(n)]
    rmuls = [q.alg.rmul(_basis_vec(n, b)) for b in range(n)]
    while True:
        iters += 1
        k = current.basis
        comp = nullspace(k.conj().T, tol).basis          # K^perp, orthonormal
        rows = [comp.conj().T]                           # membership in K
        rows.append(np.kron(comp.conj().T, comp.conj().T) @ q.delta)  # coideal
        for la in lmuls:                                 # two-sided ideal
            for rb in rmuls:
                rows.append(comp.conj().T @ (la @ rb))
        nxt = nullspace(np.vstack(rows), tol)
        if nxt.dim == current.dim:
            return nxt, iters
        if nxt.dim > current.dim:
            raise InternalCheckError("ideal-coideal iteration grew; tolerance trouble")
        current = nxt


def _basis_vec(n: int, k: int) -> np.ndarray:
    v = np.zeros(n, dtype=complex)
    v[k] = 1.0
    return v


def _assemble_quotient(q: FiniteQuantumGroup, ideal: Subspace, hom: StarHom,
                       tol: Tolerance, method: str, depth: int) -> HopfImageResult:
    """Build S = A/J on the orthogonal complement of J w.r.t. the Haar state."""
    n = q.dim
    m_j = ideal.dim
    gram = np.einsum("p,paj,ai->ij", q.haar.coeffs, q.alg.mult, q.alg.inv)
    if m_j == 0:
        lift = np.eye(n, dtype=complex)
        pi_mat = np.eye(n, dtype=complex)
    else:
        lift = nullspace(ideal.basis.conj().T @ gram, tol).basis  # J^perp_h, columns
        # re-orthonormalize the representatives in the Haar inner product so
        # the quotient's structure constants come out well conditioned
        cols = []
        for i in range(lift.shape[1]):
            v = lift[:, i]
            for _ in range(2):
                for w in cols:
                    v = v - w * (w.conj() @ gram @ v)
            v = v / np.sqrt((v.conj() @ gram @ v).real)
            cols.append(v)
        lift = np.column_stack(cols)
        full = np.hstack([lift, ideal.basis])
        if full.shape[1] != n:
            raise InternalCheckError("ideal complement has wrong dimension")
        pi_mat = np.linalg.inv(full)[: lift.shape[1]]
    ns = lift.shape[1]
    # quotient algebra structure on the complement representatives
    prods = np.einsum("pab,ak,bl->pkl", q.alg.mult, lift, lift)
    mult_s = np.einsum("qp,pkl->qkl", pi_mat, prods)
    unit_s = pi_mat @ q.alg.unit
    inv_s = pi_mat @ q.alg.inv @ np.conj(lift)
    alg_s = StarAlgebra(mult_s, unit_s, inv_s)
    require_valid_algebra(alg_s, tol, what="Hopf image quotient algebra")
    delta_s = np.kron(pi_mat, pi_mat) @ q.delta @ lift
    counit_s = q.counit @ lift
    antipode_s = pi_mat @ q.antipode @ lift
    haar_s = qg.solve_haar_state(alg_s, delta_s, tol)
    quotient = FiniteQuantumGroup(alg_s, delta_s, counit_s, antipode_s, haar_s)
    qg.require_valid_quantum_group(quotient, tol, what="Hopf image quotient")
    pi = StarHom(q.alg, alg_s, pi_mat)
    theta = StarHom(alg_s, hom.target, hom.matrix @ lift)
    residuals = _result_residuals(q, ideal, pi, theta, hom, delta_s, ns)
    worst = max(residuals.values())
    if worst > tol.eps_eq * 1000:
        raise InternalCheckError(f"Hopf image assembly failed checks: {residuals}")
    return HopfImageResult(ideal, quotient, pi, theta, depth, method, residuals)


def _result_residuals(q, ideal, pi, theta, hom, delta_s, ns) -> dict[str, float]:
    n = q.dim
    res: dict[str, float] = {}
    res["factorization"] = float(np.linalg.norm(theta.matrix @ pi.matrix - hom.matrix))
    if ideal.dim:
        res["coproduct_kills_ideal"] = float(np.linalg.norm(
            np.kron(pi.matrix, pi.matrix) @ q.delta @ ideal.basis))
        proj = ideal.projector()
        worst = 0.0
        for a in range(n):
            la = q.alg.lmul(_basis_vec(n, a))
            for b in range(n):
                rb = q.alg.rmul(_basis_vec(n, b))
                moved = la @ rb @ ideal.basis
                worst = max(worst, float(np.linalg.norm(moved - proj @ moved)))
        res["two_sided_ideal"] = worst
    else:
        res["coproduct_kills_ideal"] = 0.0
        res["two_sided_ideal"] = 0.0
    res["delta_factorization"] = float(np.linalg.norm(
        delta_s @ pi.matrix - np.kron(pi.matrix, pi.matrix) @ q.delta))
    res["pi_hom"] = check_star_hom(pi).worst
    res["theta_hom"] = check_star_hom(theta).worst
    res["pi_surjective"] = 0.0 if matrix_rank(pi.matrix) == ns else 1.0
    return res


def hopf_image(q: FiniteQuantumGroup, hom: StarHom, method: str = "coideal",
               tol: Tolerance = Tolerance(), window: int = 3,
               max_depth: int = 60) -> HopfImageResult:
    """Hopf image of a unital *-homomorphism out of a finite quantum group.

    method: "coideal" (certified fixed point, default), "kernel" (stabilizing
    kernel intersections, heuristic) or "both" (run both, hard error if they
    disagree in dimension or span).
    """
    rep = check_star_hom(hom)
    if not rep.ok(tol):
        raise PreconditionError(f"input map is not a *-homomorphism: {rep}")
    if method not in ("kernel", "coideal", "both"):
        raise PreconditionError(f"unknown method {method!r}")
    if method == "kernel":
        ideal, depth = _kernel_method(q, hom, tol, window, max_depth)
        return _assemble_quotient(q, ideal, hom, tol, "kernel", depth)
    if method == "coideal":
        ideal, iters = _coideal_method(q, hom, tol)
        return _assemble_quotient(q, ideal, hom, tol, "coideal", iters)
    ideal_k, depth = _kernel_method(q, hom, tol, window, max_depth)
    ideal_c, iters = _coideal_method(q, hom, tol)
    if ideal_k.dim != ideal_c.dim:
        raise MethodDisagreementError(
            f"kernel method found dim {ideal_k.dim}, coideal method dim {ideal_c.dim}")
    span_res = mutual_projection_residual(ideal_k, ideal_c)
    if span_res > tol.eps_rank * 100:
        raise MethodDisagreementError(
            f"kernel/coideal ideals span different spaces (residual {span_res:.3e})")
    result = _assemble_quotient(q, ideal_c, hom, tol, "both", max(depth, iters))
    result.residuals["method_span_agreement"] = span_res
    return result


@dataclass(frozen=True)
class GeneratedSubgroupResult:
    hopf: HopfImageResult
    lambda_hom: StarHom                       # A -> (+) C(H_i)
    index_algebra: StarAlgebra
    thetas: tuple[StarHom, ...]               # S -> C(H_i), each surjective

    @property
    def dim(self) -> int:
        return self.hopf.dim


def generated_subgroup(q: FiniteQuantumGroup,
                       subgroups: Sequence[tuple[StarHom, FiniteQuantumGroup]],
                       method: str = "coideal",
                       tol: Tolerance = Tolerance()) -> GeneratedSubgroupResult:
    """Quantum subgroup generated by a family of quantum subgroups.

    Each subgroup is given by its surjection pi_i: A -> C(H_i) intertwining
    the coproducts.  The result is the Hopf image of x -> (+) pi_i(x) into
    the direct sum of the targets, together with the maps theta_i that
    re-identify each H_i inside the generated subgroup.
    """
    if not subgroups:
        raise PreconditionError("need at least one subgroup surjection")
    for hom, target_q in subgroups:
        rep = check_star_hom(hom)
        if not rep.ok(tol):
            raise PreconditionError("subgroup map is not a *-homomorphism")
        if matrix_rank(hom.matrix, tol) != target_q.dim:
            raise PreconditionError("subgroup map is not surjective")
        inter = np.kron(hom.matrix, hom.matrix) @ q.delta - target_q.delta @ hom.matrix
        if np.linalg.norm(inter) > tol.eps_eq * 100:
            raise PreconditionError("subgroup map does not intertwine the coproducts")
    big = subgroups[0][1].alg
    for _, tq in subgroups[1:]:
        big = direct_sum(big, tq.alg)
    lam_mat = np.vstack([hom.matrix for hom, _ in subgroups])
    lam = StarHom(q.alg, big, lam_mat)
    hopf = hopf_image(q, lam, method=method, tol=tol)
    thetas = []
    offset = 0
    for hom, tq in subgroups:
        d = tq.dim
        theta_i = StarHom(hopf.quotient.alg, tq.alg,
                          hopf.theta.matrix[offset:offset + d])
        rep = check_star_hom(theta_i)
        if not rep.ok(tol):
            raise InternalCheckError("restricted factor map is not a *-homomorphism")
        if matrix_rank(theta_i.matrix, tol) != tq.dim:
            raise InternalCheckError("restricted factor map failed surjectivity")
        inter = np.kron(theta_i.matrix, theta_i.matrix) @ hopf.quotient.delta \
            - tq.delta @ theta_i.matrix
        if np.linalg.norm(inter) > tol.eps_eq * 1000:
            raise InternalCheckError("restricted factor map does not intertwine coproducts")
        thetas.append(theta_i)
        offset += d
    return GeneratedSubgroupResult(hopf, lam, big, tuple(thetas))


def inner_faithful(q: FiniteQuantumGroup, hom: StarHom, phi_b: StateFunctional,
                   tol: float = 1e-7, mode: str = "exact") -> bool:
    """Cesaro test: the Hopf image of hom is all of q iff the Cesaro mean of
    convolution powers of phi_b o hom is the Haar state."""
    from .algebras import check_state
    rep = check_state(hom.target, phi_b)
    if not rep.faithful:
        raise PreconditionError("the reference state on the target must be faithful")
    omega = Functional(phi_b.coeffs @ hom.matrix)
    limit = cesaro_mean(q, omega, tol=tol, mode=mode)
    return float(np.linalg.norm(limit.coeffs - q.haar.coeffs)) <= tol


def dual_generated_dim(q: FiniteQuantumGroup,
                       subgroups: Sequence[tuple[StarHom, FiniteQuantumGroup]],
                       tol: Tolerance = Tolerance()) -> int:
    """Dimension of the smallest coproduct-invariant *-subalgebra of the dual
    containing the images of the dualized subgroup maps.

    The dual of pi_i: A -> C(H_i) sends a functional f to f o pi_i; closure
    runs over products, adjoints and both slice maps of the dual coproduct.
    Must match the generated-subgroup quotient dimension.
    """
    qhat = qg.dual(q, tol)
    n = q.dim
    gens = [qhat.alg.unit]
    for hom, _ in subgroups:
        gens.extend(hom.matrix[r] for r in range(hom.matrix.shape[0]))
    basis = _orth_basis(gens, n, tol)
    d3 = qhat.delta3()
    while True:
        new_vecs = []
        cols = [basis[:, i] for i in range(basis.shape[1])]
        for u in cols:
            new_vecs.append(qhat.alg.star(u))
            spread = np.einsum("abj,j->ab", d3, u)
            new_vecs.extend(spread[a, :] for a in range(n))   # right slices
            new_vecs.extend(spread[:, b] for b in range(n))   # left slices
            for v in cols:
                new_vecs.append(qhat.alg.mul(u, v))
        grown = _orth_basis(cols + new_vecs, n, tol)
        if grown.shape[1] == basis.shape[1]:
            return int(basis.shape[1])
        basis = grown


def _orth_basis(vectors, n: int, tol: Tolerance) -> np.ndarray:
    mat = np.column_stack([np.asarray(v, dtype=complex) for v in vectors])
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((n, 0), dtype=complex)
    rank = int(np.sum(s > tol.eps_rank * s[0]))
    return u[:, :rank]


@dataclass(frozen=True)
class FamilyGenerationResult:
    hopf: HopfImageResult
    lambda_hom: StarHom            # host algebra -> index algebra of the family
    restricted: QuantumFamily      # the family re-expressed over the quotient

    @property
    def dim(self) -> int:
        return self.hopf.dim


def generated_from_family(family: QuantumFamily, host: FiniteQuantumGroup,
                          action: QuantumFamily, method: str = "coideal",
                          tol: Tolerance = Tolerance()) -> FamilyGenerationResult:
    """Quantum group generated by a quantum family of invertible maps.

    `action` must be a faithful state-preserving action of `host` on the
    family's source satisfying the Podles condition; `family` must factor
    through it as (id (x) L) o action for a *-homomorphism L from the host
    algebra to the family's index algebra (found by matching coefficients;
    if no exact match exists the family does not live under this host).
    Returns the Hopf image of L, the restricted action over the quotient and
    the factorization data.
    """
    from .families import check_podles, check_state_preserving, _same_source

    if action.index.dim != host.dim or not np.allclose(action.index.mult, host.alg.mult):
        raise PreconditionError("the action must be indexed by the host algebra")
    if not _same_source(family, action):
        raise PreconditionError("family and action must share source, state and basis")
    n = family.n
    # action axioms: Delta(a_ij) = sum_k a_ik (x) a_kj, counit, state, Podles
    d3 = host.delta3()
    lhs = np.einsum("abx,ijx->ijab", d3, action.coeffs)
    rhs = np.einsum("ika,kjb->ijab", action.coeffs, action.coeffs)
    if np.linalg.norm(lhs - rhs) > tol.eps_eq * 100:
        raise PreconditionError("the supplied family is not an action of the host")
    counit_res = np.einsum("x,ijx->ij", host.counit, action.coeffs) - np.eye(n)
    if np.linalg.norm(counit_res) > tol.eps_eq * 100:
        raise PreconditionError("the action does not satisfy the counit law")
    if check_state_preserving(action) > tol.eps_eq * 100:
        raise PreconditionError("the action does not preserve the state")
    if not check_podles(action, tol)[1]:
        raise PreconditionError("the action does not satisfy the Podles condition")
    lam_mat = _match_coefficients(host, action, family, tol)
    lam = StarHom(host.alg, family.index, lam_mat)
    rep = check_star_hom(lam)
    if not rep.ok(tol):
        raise PreconditionError(
            f"family does not factor through the host action (hom residuals {rep})")
    hopf = hopf_image(host, lam, method=method, tol=tol)
    restricted_coeffs = np.einsum("ts,ijs->ijt", hopf.pi.matrix, action.coeffs)
    restricted = QuantumFamily(family.source, family.phi, family.onb,
                               hopf.quotient.alg, restricted_coeffs)
    recovered = np.einsum("bt,ijt->ijb", hopf.theta.matrix, restricted_coeffs)
    if np.linalg.norm(recovered - family.coeffs) > tol.eps_eq * 1000:
        raise InternalCheckError("factorized family does not reproduce the input family")
    return FamilyGenerationResult(hopf, lam, restricted)


def _match_coefficients(host: FiniteQuantumGroup, action: QuantumFamily,
                        family: QuantumFamily, tol: Tolerance) -> np.ndarray:
    """Solve L(a_ij) = b_ij as a word problem over the host algebra.

    Grows the span of words in the action coefficients (they generate the
    host algebra when the action is faithful) alongside the matching words
    in the family coefficients, then solves the linear system in least
    squares; a residual means no factorization exists.
    """
    n = family.n
    na, nb = host.dim, family.index.dim
    words = [host.alg.unit]
    images = [family.index.unit]
    gens = []
    for i in range(n):
        for j in range(n):
            gens.append((action.coeffs[i, j], family.coeffs[i, j]))
            gens.append((host.alg.star(action.coeffs[i, j]),
                         family.index.star(family.coeffs[i, j])))
    frontier = list(range(len(words)))
    basis = _orth_basis(words, na, tol)
    while frontier and basis.shape[1] < na:
        new_frontier = []
        for idx in frontier:
            for gw, gi in gens:
                w = host.alg.mul(words[idx], gw)
                if np.linalg.norm(w - basis @ (basis.conj().T @ w)) > tol.eps_rank * 10:
                    words.append(w)
                    images.append(family.index.mul(images[idx], gi))
                    new_frontier.append(len(words) - 1)
                    basis = _orth_basis(words, na, tol)
        frontier = new_frontier
    if basis.shape[1] < na:
        raise PreconditionError("the action is not faithful: its coefficients "
                                "do not generate the host algebra")
    w_mat = np.column_stack(words)            # (na, m)
    v_mat = np.column_stack(images)           # (nb, m)
    lam, *_ = np.linalg.lstsq(w_mat.T, v_mat.T, rcond=None)
    lam_mat = lam.T                            # L @ w = v
    if np.linalg.norm(lam_mat @ w_mat - v_mat) > tol.eps_eq * 1000:
        raise PreconditionError("family does not factor through the host action "
                                "(inconsistent coefficient words)")
    return lam_mat
