import numpy as np
import pytest

from qsym import groups
from qsym.algebras import (
    StarAlgebra, StarHom, StateFunctional, center_dimension, check_star_hom,
    check_state, direct_sum, from_blocks, function_algebra, gram_matrix,
    identity_hom, orthonormalize, random_faithful_state, tensor, trace_state,
    uniform_state, validate_algebra,
)
from qsym.errors import PreconditionError
from qsym.linalg import Tolerance

RNG = np.random.default_rng(42)


def assert_valid(a: StarAlgebra, bound=1e-12):
    res = validate_algebra(a)
    assert max(res.values()) <= bound, res


def test_from_blocks_c2():
    a = from_blocks([1, 1])
    assert a.dim == 2
    assert a.is_commutative()
    assert_valid(a)


def test_from_blocks_m2_matrix_units():
    a = from_blocks([2])
    assert a.dim == 4
    assert_valid(a)
    # e12 * e21 = e11 in row-major matrix-unit coordinates
    e12 = np.zeros(4); e12[0 * 2 + 1] = 1.0
    e21 = np.zeros(4); e21[1 * 2 + 0] = 1.0
    e11 = np.zeros(4); e11[0] = 1.0
    assert np.allclose(a.mul(e12, e21), e11)
    # coordinate products match concrete matrix products
    x, y = RNG.standard_normal(4) + 1j * RNG.standard_normal(4), RNG.standard_normal(4)
    concrete = (x.reshape(2, 2) @ y.reshape(2, 2)).reshape(4)
    assert np.allclose(a.mul(x, y), concrete)


def test_from_blocks_c4():
    a = from_blocks([1, 1, 1, 1])
    assert a.dim == 4 and a.is_commutative()


def test_from_blocks_empty_rejected():
    with pytest.raises(PreconditionError):
        from_blocks([])


def test_function_algebra_delta_products():
    g = groups.symmetric_group(3)
    a = function_algebra(g)
    assert a.dim == 6
    assert_valid(a)
    # delta_g * delta_h = [g == h] delta_g
    d0 = np.eye(6)[0]
    d1 = np.eye(6)[1]
    assert np.allclose(a.mul(d0, d0), d0)
    assert np.allclose(a.mul(d0, d1), np.zeros(6))


def test_center_dimensions():
    assert center_dimension(from_blocks([3])) == 1
    assert center_dimension(from_blocks([2, 1, 1])) == 3
    assert center_dimension(from_blocks([2, 2])) == 2


def test_tensor_and_direct_sum():
    c2 = from_blocks([1, 1])
    t = tensor(c2, c2)
    assert t.dim == 4
    assert_valid(t)
    s = direct_sum(from_blocks([2]), from_blocks([1]))
    assert s.dim == 5
    assert_valid(s)
    assert s.blocks == (2, 1)


def test_tensor_associative_exactly():
    a, b, c = from_blocks([1, 1]), from_blocks([2]), from_blocks([1])
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    # flat index convention makes both orders literally identical
    assert np.array_equal(left.mult, right.mult)
    assert np.array_equal(left.unit, right.unit)
    assert np.array_equal(left.inv, right.inv)


def test_check_state_uniform_faithful():
    a = from_blocks([1, 1, 1])
    rep = check_state(a, uniform_state(3))
    assert rep.unital and rep.positive and rep.faithful


def test_check_state_point_mass_not_faithful():
    a = from_blocks([1, 1])
    rep = check_state(a, StateFunctional(np.array([1.0, 0.0], dtype=complex)))
    assert rep.unital and rep.positive and not rep.faithful


@pytest.mark.parametrize("qval", [0.1, 0.5, 0.9])
def test_check_state_weighted_gram_eigenvalues(qval):
    # Gram of the (q, 1-q) state on C^2 is diag(q, 1-q)
    a = from_blocks([1, 1])
    phi = StateFunctional(np.array([qval, 1 - qval], dtype=complex))
    g = gram_matrix(a, phi)
    assert np.allclose(np.sort(np.linalg.eigvalsh(g)), sorted([qval, 1 - qval]))
    assert check_state(a, phi).faithful


def test_orthonormalize_c2_uniform_hand_values():
    a = from_blocks([1, 1])
    onb = orthonormalize(a, uniform_state(2))
    # basis sqrt(2) delta_i; unit coefficients (1/sqrt2, 1/sqrt2); T = I
    assert np.allclose(onb.change, np.sqrt(2) * np.eye(2))
    assert np.allclose(onb.lam, np.array([1, 1]) / np.sqrt(2))
    assert np.allclose(onb.t_mat, np.eye(2))
    assert onb.m[0, 0, 0] == pytest.approx(np.sqrt(2))


def test_orthonormalize_m2_trace():
    a = from_blocks([2])
    onb = orthonormalize(a, trace_state(a))
    # matrix units scaled by sqrt(2); involution permutes (k,l) -> (l,k)
    assert np.allclose(onb.change, np.sqrt(2) * np.eye(4))
    perm = np.zeros((4, 4))
    perm[0, 0] = perm[3, 3] = 1.0
    perm[1, 2] = perm[2, 1] = 1.0
    assert np.allclose(onb.t_mat, perm)


@pytest.mark.parametrize("blocks", [[1, 1], [2], [1, 2], [1, 1, 1, 1]])
def test_orthonormalize_postconditions(blocks):
    a = from_blocks(blocks)
    rng = np.random.default_rng(hash(tuple(blocks)) % 2 ** 32)
    phi = random_faithful_state(a, rng)
    onb = orthonormalize(a, phi)
    g = gram_matrix(a, phi)
    # phi(e_i* e_j) = delta_ij
    assert np.linalg.norm(onb.change.conj().T @ g @ onb.change - np.eye(a.dim)) <= 1e-10
    # unit reconstruction
    assert np.allclose(onb.change @ onb.lam, a.unit, atol=1e-10)
    # T is the involution in the new basis and T conj(T) = I (** = id)
    assert np.linalg.norm(onb.t_mat @ np.conj(onb.t_mat) - np.eye(a.dim)) <= 1e-9
    # product tensor reproduces products as a linear identity
    for k in range(a.dim):
        for l in range(a.dim):
            raw = a.mul(onb.change[:, k], onb.change[:, l])
            recon = onb.change @ onb.m[:, k, l]
            assert np.linalg.norm(raw - recon) <= 1e-9
    # the re-expressed algebra is itself a valid *-algebra
    res = validate_algebra(onb.algebra())
    assert max(res.values()) <= 1e-9


def test_orthonormalize_rejects_non_faithful():
    a = from_blocks([1, 1])
    with pytest.raises(PreconditionError):
        orthonormalize(a, StateFunctional(np.array([1.0, 0.0], dtype=complex)))


def test_check_star_hom_identity_and_evaluation():
    a = from_blocks([1, 1, 1])
    assert check_star_hom(identity_hom(a)).worst <= 1e-12
    ev = StarHom(a, from_blocks([1]), np.array([[0, 1, 0]], dtype=complex))
    assert check_star_hom(ev).worst <= 1e-12


def test_transpose_map_flagged_non_multiplicative():
    # transpose on M2: unital, *-preserving, but not multiplicative
    a = from_blocks([2])
    t = np.zeros((4, 4))
    t[0, 0] = t[3, 3] = 1.0
    t[1, 2] = t[2, 1] = 1.0
    rep = check_star_hom(StarHom(a, a, t.astype(complex)))
    assert rep.unital <= 1e-12
    assert rep.star <= 1e-12
    assert rep.multiplicative > 0.5


def test_constructed_algebras_all_validate():
    g = groups.cyclic_group(4)
    for a in [from_blocks([1]), from_blocks([2, 2]), function_algebra(g),
              tensor(from_blocks([1, 1]), from_blocks([2])),
              direct_sum(from_blocks([1]), from_blocks([1, 1]))]:
        assert_valid(a, bound=1e-12)
