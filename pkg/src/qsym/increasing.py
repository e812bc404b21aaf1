"""Quantum increasing sequences and their completion to magic unitaries.

A representation of the space of quantum increasing sequences of length k
with values in {1..n} is an n x k array of d x d orthogonal projections
v[i, j] with

  (i)   each v[i, j] a projection,
  (ii)  column sums  sum_i v[i, j] = 1  for every position j,
  (iii) v[i, j] v[i', j'] = 0 whenever j < j' and i >= i'  (order forcing),

which together imply the support pattern v[i, j] = 0 unless j <= i <= n-k+j
(1-based).  Every such representation completes to an n x n magic unitary:
with the boundary conventions v[0,0] = 1 and v[i,0] = v[0,i] = v[i,k+1] = 0,

    p[i, j]       = v[i, j]                          for j <= k,
    p[i, k+m]     = 0      for i in {1..m-1} or {m+k+1..n},
    p[p+m, k+m]   = sum_{i=0}^{m+p-1} (v[i, p] - v[i+1, p+1]),

(all 1-based, m = 1..n-k, p = 0..k).  The completion is re-validated after
the fact: an index slip here silently breaks the magic-unitary property, so
failing output is a hard internal error, not a warning.

For d = 1 the representations are exactly the classical increasing
sequences; completing the six classical (k=2, n=4) sequences yields six
distinct permutations generating the full symmetric group S4.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InternalCheckError, PreconditionError, ShapeError
from .groups import FiniteGroup, Permutation, closure
from .linalg import Tolerance

__all__ = [
    "IncreasingSequenceRep", "MagicUnitaryRep", "RepReport", "MagicReport",
    "validate", "validate_magic", "classical_rep", "enumerate_sequences",
    "enumerate_classical", "complete", "magic_to_permutation",
    "s4_generation_check", "free_pair_rep", "two_projection_pair",
    "coefficient_growth", "GrowthResult",
]


@dataclass(frozen=True)
class IncreasingSequenceRep:
    """Projection-valued n x k array v[i, j] (0-based storage)."""

    n: int
    k: int
    d: int
    v: np.ndarray  # (n, k, d, d)

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise ShapeError("need 1 <= k <= n")
        if self.v.shape != (self.n, self.k, self.d, self.d):
            raise ShapeError(f"v has shape {self.v.shape}, expected "
                             f"{(self.n, self.k, self.d, self.d)}")


@dataclass(frozen=True)
class MagicUnitaryRep:
    """n x n array of d x d entries; rows and columns must sum to 1."""

    n: int
    d: int
    p: np.ndarray  # (n, n, d, d)

    def __post_init__(self):
        if self.p.shape != (self.n, self.n, self.d, self.d):
            raise ShapeError(f"p has shape {self.p.shape}, expected "
                             f"{(self.n, self.n, self.d, self.d)}")


@dataclass(frozen=True)
class RepReport:
    projection: float
    column_sums: float
    order_zero: float
    support: float

    @property
    def worst(self) -> float:
        return max(self.projection, self.column_sums, self.order_zero, self.support)

    def ok(self, tol: Tolerance = Tolerance()) -> bool:
        return self.worst <= tol.eps_eq * 10


@dataclass(frozen=True)
class MagicReport:
    projection: float
    row_sums: float
    column_sums: float

    @property
    def worst(self) -> float:
        return max(self.projection, self.row_sums, self.column_sums)

    def ok(self, tol: Tolerance = Tolerance()) -> bool:
        return self.worst <= tol.eps_eq * 10


def validate(rep: IncreasingSequenceRep) -> RepReport:
    """Residuals for the four defining invariant families."""
    v = rep.v
    n, k, d = rep.n, rep.k, rep.d
    eye = np.eye(d)
    proj = 0.0
    for i in range(n):
        for j in range(k):
            m = v[i, j]
            proj = max(proj,
                       float(np.linalg.norm(m @ m - m)),
                       float(np.linalg.norm(m - m.conj().T)))
    colsum = max(float(np.linalg.norm(v[:, j].sum(axis=0) - eye)) for j in range(k))
    order = 0.0
    for j in range(k):
        for j2 in range(j + 1, k):
            for i in range(n):
                for i2 in range(i + 1):  # i >= i2
                    order = max(order, float(np.linalg.norm(v[i, j] @ v[i2, j2])))
    support = 0.0
    for i in range(n):
        for j in range(k):
            if not (j <= i <= n - k + j):  # 0-based form of j+1 <= i+1 <= n-k+j+1
                support = max(support, float(np.linalg.norm(v[i, j])))
    return RepReport(proj, colsum, order, support)


def validate_magic(u: MagicUnitaryRep) -> MagicReport:
    p = u.p
    n, d = u.n, u.d
    eye = np.eye(d)
    proj = 0.0
    for i in range(n):
        for j in range(n):
            m = p[i, j]
            proj = max(proj,
                       float(np.linalg.norm(m @ m - m)),
                       float(np.linalg.norm(m - m.conj().T)))
    rows = max(float(np.linalg.norm(p[i].sum(axis=0) - eye)) for i in range(n))
    cols = max(float(np.linalg.norm(p[:, j].sum(axis=0) - eye)) for j in range(n))
    return MagicReport(proj, rows, cols)


def classical_rep(sequence, n: int) -> IncreasingSequenceRep:
    """d=1 representation of a strictly increasing 1-based sequence."""
    seq = [int(s) for s in sequence]
    if any(not 1 <= s <= n for s in seq):
        raise PreconditionError(f"sequence values must lie in 1..{n}")
    if any(a >= b for a, b in zip(seq, seq[1:])):
        raise PreconditionError("sequence must be strictly increasing")
    k = len(seq)
    v = np.zeros((n, k, 1, 1), dtype=complex)
    for j, s in enumerate(seq):
        v[s - 1, j, 0, 0] = 1.0
    return IncreasingSequenceRep(n, k, 1, v)


def enumerate_sequences(k: int, n: int) -> list[tuple[int, ...]]:
    """All strictly increasing length-k sequences in 1..n (there are C(n,k))."""
    return [tuple(c) for c in itertools.combinations(range(1, n + 1), k)]


def enumerate_classical(k: int, n: int) -> list[IncreasingSequenceRep]:
    return [classical_rep(seq, n) for seq in enumerate_sequences(k, n)]


def _padded(rep: IncreasingSequenceRep) -> np.ndarray:
    """v with 1-based indices and sentinels v[0,0]=1, v[i,0]=v[0,j]=v[i,k+1]=0."""
    n, k, d = rep.n, rep.k, rep.d
    w = np.zeros((n + 2, k + 2, d, d), dtype=complex)
    w[1:n + 1, 1:k + 1] = rep.v
    w[0, 0] = np.eye(d)
    return w


def complete(rep: IncreasingSequenceRep, tol: Tolerance = Tolerance(),
             check_input: bool = True) -> MagicUnitaryRep:
    """Complete an increasing-sequence representation to a magic unitary."""
    if check_input:
        report = validate(rep)
        if not report.ok(tol):
            raise PreconditionError(f"representation fails its invariants: {report}")
    n, k, d = rep.n, rep.k, rep.d
    w = _padded(rep)
    p = np.zeros((n + 1, n + 1, d, d), dtype=complex)  # 1-based workspace
    p[1:n + 1, 1:k + 1] = w[1:n + 1, 1:k + 1]
    for m in range(1, n - k + 1):
        col = k + m
        for q in range(0, k + 1):
            i_target = q + m
            acc = np.zeros((d, d), dtype=complex)
            for i in range(0, m + q):
                acc += w[i, q] - w[i + 1, q + 1]
            p[i_target, col] = acc
        # rows 1..m-1 and m+k+1..n stay zero
    out = MagicUnitaryRep(n, d, p[1:, 1:].copy())
    report = validate_magic(out)
    if not report.ok(tol):
        raise InternalCheckError(
            f"completion produced an invalid magic unitary: {report}")
    return out


def magic_to_permutation(u: MagicUnitaryRep, tol: Tolerance = Tolerance()) -> Permutation:
    """Extract the permutation from a d=1, 0/1-valued magic unitary.

    Convention: column j carries its 1 in row sigma(j)."""
    if u.d != 1:
        raise PreconditionError("only scalar magic unitaries encode permutations")
    mat = u.p[:, :, 0, 0].real
    if np.linalg.norm(mat - np.round(mat)) > tol.eps_eq * 10:
        raise PreconditionError("entries are not 0/1")
    images = [int(np.argmax(mat[:, j])) for j in range(u.n)]
    return Permutation(tuple(images))


def s4_generation_check() -> tuple[int, bool, list[Permutation], FiniteGroup]:
    """Complete the six (k=2, n=4) classical sequences and close the results.

    Returns (group order, order == 24, the six permutations, the group)."""
    perms = [magic_to_permutation(complete(rep)) for rep in enumerate_classical(2, 4)]
    group = closure(perms)
    return group.order, group.order == 24, perms, group


def two_projection_pair(t: float, d: int = 2) -> tuple[np.ndarray, ...]:
    """The standard pair at angle parameter t in (0,1): p1 fixed, q2 tilted.

    Returns (p1, p2, q1, q2) with p2 = q1 = 0; p1 and q2 generate the generic
    two-projection algebra for t not in {0, 1}."""
    if d != 2:
        raise PreconditionError("the standard pair is 2-dimensional")
    if not 0.0 <= t <= 1.0:
        raise PreconditionError("t must lie in [0, 1]")
    s = np.sqrt(t * (1.0 - t))
    p1 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    q2 = np.array([[t, s], [s, 1.0 - t]], dtype=complex)
    zero = np.zeros((2, 2), dtype=complex)
    return p1, zero, zero, q2


_PAIR_RELATIONS = (
    ("p1 p2 = 0", 0, 1), ("q1 q2 = 0", 2, 3), ("p1 q1 = 0", 0, 2),
    ("p2 q2 = 0", 1, 3), ("q1 p2 = 0", 2, 1),
)


def free_pair_rep(p1, p2, q1, q2, tol: Tolerance = Tolerance()) -> IncreasingSequenceRep:
    """(k=2, n=4) representation from two pairs of orthogonal projections.

    Required relations: p1 p2 = 0, q1 q2 = 0, p1 q1 = 0, p2 q2 = 0, q1 p2 = 0.
    Fills v[2,1] = p1, v[3,1] = p2, v[2,2] = q1, v[3,2] = q2 (1-based),
    v[1,1] = 1 - p1 - p2, v[4,2] = 1 - q1 - q2, zeros elsewhere.
    """
    mats = [np.asarray(m, dtype=complex) for m in (p1, p2, q1, q2)]
    d = mats[0].shape[0]
    for name, m in zip(("p1", "p2", "q1", "q2"), mats):
        if m.shape != (d, d):
            raise ShapeError(f"{name} must be {d} x {d}")
        if np.linalg.norm(m @ m - m) > tol.eps_eq * 10 or np.linalg.norm(m - m.conj().T) > tol.eps_eq * 10:
            raise PreconditionError(f"{name} is not an orthogonal projection")
    failing = [name for name, a, b in _PAIR_RELATIONS
               if np.linalg.norm(mats[a] @ mats[b]) > tol.eps_eq * 10]
    if failing:
        raise PreconditionError(f"projection relations violated: {', '.join(failing)}")
    p1m, p2m, q1m, q2m = mats
    eye = np.eye(d)
    v = np.zeros((4, 2, d, d), dtype=complex)
    v[0, 0] = eye - p1m - p2m
    v[1, 0] = p1m
    v[2, 0] = p2m
    v[1, 1] = q1m
    v[2, 1] = q2m
    v[3, 1] = eye - q1m - q2m
    rep = IncreasingSequenceRep(4, 2, d, v)
    report = validate(rep)
    if not report.ok(tol):
        raise PreconditionError(f"assembled representation fails validation: {report}")
    return rep


@dataclass(frozen=True)
class GrowthResult:
    dims: list[int]
    truncated: list[bool]


def coefficient_growth(rep: IncreasingSequenceRep, depth: int,
                       degree_cap: int = 8, dim_cap: int = 4096,
                       tol: Tolerance = Tolerance()) -> GrowthResult:
    """Dimension of the *-algebra generated by the m-fold composed family's
    coefficients, for m = 1..depth.

    The m-fold composition of the induced family on C^n has entries
    sum_k b[i,k] (x) c[k,j] in M_{d^m}; the algebra they generate is closed
    under products of word length <= degree_cap and capped at dim_cap
    dimensions (the cap is reported, not an error).
    """
    report = validate(rep)
    if not report.ok(tol):
        raise PreconditionError(f"representation fails its invariants: {report}")
    u = complete(rep, tol)
    base = u.p  # (n, n, d, d)
    n = u.n
    entries = base
    dims, truncated = [], []
    for _ in range(depth):
        dim, cut = _generated_algebra_dim(entries, degree_cap, dim_cap, tol)
        dims.append(dim)
        truncated.append(cut)
        # next level: entries[i, j] = sum_k entries[i, k] (x) base[k, j]
        side = entries.shape[2]
        nxt = np.zeros((n, n, side * u.d, side * u.d), dtype=complex)
        for i in range(n):
            for j in range(n):
                acc = np.zeros((side * u.d, side * u.d), dtype=complex)
                for k in range(n):
                    acc += np.kron(entries[i, k], base[k, j])
                nxt[i, j] = acc
        entries = nxt
    return GrowthResult(dims, truncated)


def _generated_algebra_dim(entries: np.ndarray, degree_cap: int, dim_cap: int,
                           tol: Tolerance) -> tuple[int, bool]:
    """Dimension of the unital *-algebra generated by the given matrices."""
    side = entries.shape[2]
    gens = [entries[i, j] for i in range(entries.shape[0]) for j in range(entries.shape[1])]
    gens = gens + [g.conj().T for g in gens]
    basis: list[np.ndarray] = []

    def add(mat: np.ndarray) -> bool:
        vec = mat.reshape(-1)
        for b in basis:
            vec = vec - b * (b.conj() @ vec)
        nrm = np.linalg.norm(vec)
        if nrm <= tol.eps_rank * max(1.0, np.linalg.norm(mat)):
            return False
        basis.append(vec / nrm)
        return True

    add(np.eye(side, dtype=complex))
    frontier = [np.eye(side, dtype=complex)]
    truncated = False
    for _ in range(degree_cap):
        new_frontier = []
        for w in frontier:
            for g in gens:
                prod = w @ g
                if add(prod):
                    new_frontier.append(prod)
                if len(basis) >= dim_cap:
                    return len(basis), True
        if not new_frontier:
            break
        frontier = new_frontier
    else:
        truncated = truncated or bool(frontier)
    return len(basis), truncated
