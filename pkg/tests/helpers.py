"""Shared builders for the test suite: seeded random homs with classical
oracles, the reference completion matrix, and small convenience wrappers."""

from __future__ import annotations

import numpy as np

from qsym import algebras, groups, quantumgroups as qg
from qsym.families import QuantumFamily
from qsym.algebras import StarHom, from_blocks, orthonormalize, uniform_state


def random_partition_hom(q, g: groups.FiniteGroup, d: int, rng: np.random.Generator
                         ) -> tuple[StarHom, int]:
    """Random *-hom C(G) -> M_d via a partition of unity.

    Oracle: the Hopf image dimension is the order of the subgroup generated
    by the elements whose projection is nonzero.
    """
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    qmat, _ = np.linalg.qr(z)
    assign = rng.integers(0, g.order, size=d)
    mat = np.zeros((d * d, g.order), dtype=complex)
    for elem in range(g.order):
        cols = qmat[:, assign == elem]
        proj = cols @ cols.conj().T
        mat[:, elem] = proj.reshape(d * d)
    hom = StarHom(q.alg, from_blocks([d]), mat)
    support = sorted(set(int(a) for a in assign))
    oracle = len(groups.subgroup_generated(g, support))
    return hom, oracle


def regular_representation(g: groups.FiniteGroup) -> list[np.ndarray]:
    n = g.order
    reg = [np.zeros((n, n), dtype=complex) for _ in range(n)]
    for a in range(n):
        for x in range(n):
            reg[a][g.mul(a, x), x] = 1.0
    return reg


def random_subrep_hom(q, g: groups.FiniteGroup, rng: np.random.Generator
                      ) -> tuple[StarHom, int]:
    """Random *-hom C*(G) -> M_d by cutting the regular representation to a
    random invariant subspace.

    Oracle: the Hopf image dimension is |G| / |kernel of the representation|.
    """
    n = g.order
    reg = regular_representation(g)
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    x = x + x.conj().T
    xbar = sum(reg[a] @ x @ reg[a].conj().T for a in range(n))
    evals, evecs = np.linalg.eigh(xbar)
    clusters, start = [], 0
    for i in range(1, n + 1):
        if i == n or evals[i] - evals[i - 1] > 1e-6:
            clusters.append(list(range(start, i)))
            start = i
    keep = [c for c in clusters if rng.random() < 0.6]
    if not keep:
        keep = [clusters[int(rng.integers(0, len(clusters)))]]
    idx = [i for c in keep for i in c]
    v = evecs[:, idx]
    d = v.shape[1]
    mat = np.zeros((d * d, n), dtype=complex)
    for a in range(n):
        mat[:, a] = (v.conj().T @ reg[a] @ v).reshape(d * d)
    hom = StarHom(q.alg, from_blocks([d]), mat)
    kernel = [a for a in range(n)
              if np.linalg.norm(v.conj().T @ reg[a] @ v - np.eye(d)) < 1e-8]
    return hom, n // len(kernel)


def random_group_hom_instances(count: int, seed: int):
    """Seeded stream of (host quantum group, hom, oracle dim) triples over
    group-derived hosts of order <= 8."""
    rng = np.random.default_rng(seed)
    hosts = [
        ("fun", groups.symmetric_group(3)),
        ("fun", groups.cyclic_group(4)),
        ("fun", groups.dihedral_group(4)),
        ("fun", groups.cyclic_group(6)),
        ("grp", groups.symmetric_group(3)),
        ("grp", groups.klein_four()),
        ("grp", groups.cyclic_group(6)),
        ("grp", groups.cyclic_group(8)),
    ]
    out = []
    for trial in range(count):
        kind, g = hosts[trial % len(hosts)]
        if kind == "fun":
            q = qg.cqg_function_algebra(g)
            hom, oracle = random_partition_hom(q, g, int(rng.integers(1, 4)), rng)
        else:
            q = qg.cqg_group_algebra(g)
            hom, oracle = random_subrep_hom(q, g, rng)
        out.append((q, hom, oracle))
    return out


def canonical_action_family(g: groups.FiniteGroup, degree: int) -> QuantumFamily:
    """The permutation action of a permutation group on C^degree as a family
    indexed by C(G)."""
    assert g.perms is not None
    q = qg.cqg_function_algebra(g)
    coeffs = np.zeros((degree, degree, g.order), dtype=complex)
    for gi, perm in enumerate(g.perms):
        for j in range(degree):
            coeffs[perm(j), j, gi] = 1.0
    source = from_blocks([1] * degree)
    phi = uniform_state(degree)
    onb = orthonormalize(source, phi)
    return QuantumFamily(source, phi, onb, q.alg, coeffs)


def reference_completion(p1, p2, q1, q2) -> np.ndarray:
    """Independent construction of the completed 4x4 block matrix for a
    (k=2, n=4) representation with the standard generator placement."""
    d = p1.shape[0]
    one = np.eye(d)
    zero = np.zeros((d, d), dtype=complex)
    rows = [
        [one - p1 - p2, zero, p1 + p2, zero],
        [p1, q1, one - p1 - p2 - q1, p2],
        [p2, q2, q1, one - p2 - q1 - q2],
        [zero, one - q1 - q2, zero, q1 + q2],
    ]
    return np.array(rows)


def evaluation_pair_hom(q, elements) -> StarHom:
    return qg.evaluation_hom(q, elements)
