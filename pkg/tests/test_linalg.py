import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsym.errors import ShapeError
from qsym.linalg import (
    Subspace, Tolerance, full_space, image, intersect, kron, matmul,
    matrix_rank, mutual_projection_residual, nullspace, solve_least_squares,
    span, subspace_sum, zero_space,
)

RNG = np.random.default_rng(20240811)


def random_matrix(rows, cols, rng=RNG):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def test_tolerance_positive():
    with pytest.raises(ValueError):
        Tolerance(eps_eq=0.0)
    with pytest.raises(ValueError):
        Tolerance(eps_rank=-1.0)


def test_matmul_identity():
    x = random_matrix(2, 2)
    assert np.allclose(matmul(np.eye(2), x), x)


def test_matmul_involution():
    swap = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(matmul(swap, swap), np.eye(2))


def test_matmul_shape_error():
    with pytest.raises(ShapeError):
        matmul(np.eye(2), np.eye(3))


def test_matmul_adjoint_of_product():
    # (AB)^H == B^H A^H, recomputed directly
    a, b = random_matrix(5, 5), random_matrix(5, 5)
    lhs = matmul(a, b).conj().T
    rhs = matmul(b.conj().T, a.conj().T)
    assert np.linalg.norm(lhs - rhs) <= 1e-9


def test_kron_identities():
    assert np.allclose(kron(np.eye(2), np.eye(3)), np.eye(6))


def test_kron_unit_positions():
    # single entries land where the index convention says they do
    for (ar, ac), (br, bc) in [((0, 0), (1, 1)), ((1, 0), (0, 1)), ((1, 1), (1, 1))]:
        a = np.zeros((2, 2)); a[ar, ac] = 1.0
        b = np.zeros((2, 2)); b[br, bc] = 1.0
        out = kron(a, b)
        expected = np.zeros((4, 4))
        expected[ar * 2 + br, ac * 2 + bc] = 1.0
        assert np.array_equal(out, expected)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4), st.integers(2, 4), st.integers(2, 4),
       st.integers(0, 2 ** 31 - 1))
def test_kron_mixed_product(m, n, p, q, seed):
    rng = np.random.default_rng(seed)
    a, c = random_matrix(m, n, rng), random_matrix(n, p, rng)
    b, d = random_matrix(q, m, rng), random_matrix(m, q, rng)
    lhs = matmul(kron(a, b), kron(c, d))
    rhs = kron(matmul(a, c), matmul(b, d))
    assert np.linalg.norm(lhs - rhs) <= 1e-9 * max(1.0, np.linalg.norm(rhs))


def test_nullspace_zero_matrix():
    ns = nullspace(np.zeros((3, 3)))
    assert ns.dim == 3


def test_nullspace_identity():
    assert nullspace(np.eye(3)).dim == 0


def test_nullspace_hand_example():
    # [[1,1],[1,1]] kills exactly span{(1,-1)/sqrt(2)} (hand elimination)
    ns = nullspace(np.ones((2, 2)))
    assert ns.dim == 1
    v = ns.basis[:, 0]
    target = np.array([1.0, -1.0]) / np.sqrt(2)
    overlap = abs(np.vdot(target, v))
    assert overlap == pytest.approx(1.0, abs=1e-12)


def test_nullspace_residual_invariant():
    for _ in range(10):
        a = random_matrix(6, 8)
        a[:, :3] = a[:, 3:6]  # force rank deficiency
        ns = nullspace(a)
        assert ns.dim >= 3
        norm_a = np.linalg.norm(a, 2)
        for k in range(ns.dim):
            assert np.linalg.norm(a @ ns.basis[:, k]) <= 1e-8 * norm_a
        assert ns.dim + matrix_rank(a) == a.shape[1]


def test_intersect_idempotent_and_commutative():
    u = image(random_matrix(6, 3))
    same = intersect(u, u)
    assert same.dim == u.dim
    assert mutual_projection_residual(same, u) <= 1e-9
    v = image(random_matrix(6, 4))
    uv, vu = intersect(u, v), intersect(v, u)
    assert uv.dim == vu.dim
    assert mutual_projection_residual(uv, vu) <= 1e-8


def test_intersect_coordinate_spans():
    e = np.eye(4, dtype=complex)
    u = Subspace(4, e[:, :2])          # span{e1, e2}
    v = Subspace(4, e[:, 1:3])         # span{e2, e3}
    w = intersect(u, v)
    assert w.dim == 1
    assert abs(abs(w.basis[1, 0]) - 1.0) <= 1e-12


def test_intersect_planted_vector():
    # construct-then-recover: plant a shared vector inside two random spans
    rng = np.random.default_rng(5)
    w = random_matrix(6, 1, rng)[:, 0]
    w = w / np.linalg.norm(w)
    u = image(np.column_stack([w, random_matrix(6, 2, rng)]))
    v = image(np.column_stack([w, random_matrix(6, 2, rng)]))
    got = intersect(u, v)
    assert got.dim == 1
    assert np.linalg.norm(w - got.project(w)) <= 1e-9


def test_intersect_ambient_mismatch():
    with pytest.raises(ShapeError):
        intersect(full_space(3), full_space(4))


def test_subspace_sum_and_image():
    e = np.eye(4, dtype=complex)
    u = Subspace(4, e[:, :1])
    v = Subspace(4, e[:, 1:2])
    s = subspace_sum(u, v)
    assert s.dim == 2
    assert image(np.zeros((3, 3))).dim == 0
    assert zero_space(5).dim == 0


def test_span_helper():
    vs = [np.array([1, 0, 0]), np.array([0, 1, 0]), np.array([1, 1, 0])]
    assert span(vs, 3).dim == 2


def test_solve_least_squares():
    a = random_matrix(5, 3)
    x = random_matrix(3, 1)[:, 0]
    b = a @ x
    got = solve_least_squares(a, b)
    assert np.linalg.norm(a @ got - b) <= 1e-9 * np.linalg.norm(b)
