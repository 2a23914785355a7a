import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multired.errors import HermiticityError, InvalidSubsystemError, ShapeError
from multired.rand import random_density_matrix, random_hermitian, random_pure_state
from multired.tensor import (
    eigenvalues_hermitian,
    is_psd,
    ket,
    min_eigenvalue,
    pad_with_identity,
    partial_trace,
    partial_transpose,
    permutation_from_cycles,
    permutation_operator,
    permute_systems,
    projector,
    schmidt_decompose,
    swap_operator,
    system_permutation_matrix,
    tensor_product,
)

from conftest import BELL, BELL_DM


def naive_partial_trace_13(rho):
    """Trace out qubits 1 and 3 of a three-qubit operator by explicit summation."""
    r = rho.reshape([2] * 6)
    out = np.zeros((2, 2), dtype=complex)
    for i, j, k, m in itertools.product(range(2), repeat=4):
        out[i, j] += r[k, i, m, k, j, m]
    return out


def test_tensor_product_identity():
    np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_product_basis_projector_is_big_endian():
    p = tensor_product(projector(ket(0, dims=[2])), projector(ket(1, dims=[2])))
    np.testing.assert_array_equal(p, np.diag([0, 1, 0, 0]))


def test_tensor_product_trace_factorizes(rng):
    a, b = random_hermitian(2, rng), random_hermitian(2, rng)
    direct = sum(a[i, i] * b[j, j] for i in range(2) for j in range(2))
    assert np.trace(tensor_product(a, b)) == pytest.approx(direct)


def test_tensor_product_associative(rng):
    a, b, c = (random_hermitian(k, rng) for k in (2, 3, 2))
    np.testing.assert_allclose(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c)))


def test_partial_trace_bell_marginal():
    np.testing.assert_allclose(partial_trace(BELL_DM, [2, 2], [1]), np.eye(2) / 2)


def test_partial_trace_product(rng):
    r1, r2 = random_density_matrix(2, rng), random_hermitian(3, rng)
    np.testing.assert_allclose(partial_trace(np.kron(r1, r2), [2, 3], [1]), np.trace(r2) * r1, atol=1e-12)


def test_partial_trace_matches_loop_oracle(rng):
    rho = random_density_matrix(8, rng)
    np.testing.assert_allclose(partial_trace(rho, [2, 2, 2], [2]), naive_partial_trace_13(rho), atol=1e-14)


def test_partial_trace_keep_all_and_none(rng):
    rho = random_density_matrix(12, rng)
    np.testing.assert_allclose(partial_trace(rho, [2, 3, 2], [1, 2, 3]), rho)
    t = partial_trace(rho, [2, 3, 2], [])
    assert t.shape == (1, 1)
    assert t[0, 0] == pytest.approx(1.0)


def test_partial_trace_invalid_subsystem():
    with pytest.raises(InvalidSubsystemError):
        partial_trace(np.eye(4), [2, 2], [3])


def test_partial_trace_dims_mismatch():
    with pytest.raises(ShapeError):
        partial_trace(np.eye(4), [2, 3], [1])


def test_pad_first_system(rng):
    r1 = random_density_matrix(2, rng)
    np.testing.assert_allclose(pad_with_identity(r1, [2, 2, 2], [1]), np.kron(r1, np.eye(4)))


def test_pad_contiguous_tail(rng):
    s = random_hermitian(4, rng)
    np.testing.assert_allclose(pad_with_identity(s, [2, 2, 2], [2, 3]), np.kron(np.eye(2), s))


def test_pad_noncontiguous_matches_elementwise(rng):
    s = random_hermitian(4, rng).reshape(2, 2, 2, 2)
    padded = pad_with_identity(s.reshape(4, 4), [2, 2, 2], [1, 3]).reshape([2] * 6)
    for i1, i2, i3, j1, j2, j3 in itertools.product(range(2), repeat=6):
        assert padded[i1, i2, i3, j1, j2, j3] == pytest.approx(s[i1, i3, j1, j3] * (i2 == j2))


def test_pad_then_trace_gives_multiple(rng):
    s = random_hermitian(4, rng)
    np.testing.assert_allclose(partial_trace(pad_with_identity(s, [2, 2, 2], [1, 3]), [2, 2, 2], [1, 3]), 2 * s)


def test_pad_shape_error():
    with pytest.raises(ShapeError):
        pad_with_identity(np.eye(3), [2, 2], [1])


@settings(max_examples=40, deadline=None)
@given(
    dims=st.lists(st.integers(1, 3), min_size=1, max_size=4),
    data=st.data(),
)
def test_pad_trace_roundtrip_property(dims, data):
    n = len(dims)
    placement = data.draw(st.sets(st.integers(1, n)))
    seed = data.draw(st.integers(0, 2**32 - 1))
    local = int(np.prod([dims[i - 1] for i in sorted(placement)]))
    s = random_hermitian(local, np.random.default_rng(seed))
    padded = pad_with_identity(s, dims, placement)
    other = int(np.prod([dims[i - 1] for i in range(1, n + 1) if i not in placement]))
    np.testing.assert_allclose(partial_trace(padded, dims, placement), other * s, atol=1e-12)


def test_partial_transpose_bell_is_half_swap():
    pt = partial_transpose(BELL_DM, [2, 2], [2])
    oracle = np.zeros((4, 4))
    for i, j, k, m in itertools.product(range(2), repeat=4):
        oracle[2 * i + m, 2 * k + j] = BELL_DM[2 * i + j, 2 * k + m].real
    np.testing.assert_allclose(pt, oracle)
    np.testing.assert_allclose(pt, swap_operator(2) / 2)


def test_partial_transpose_empty_and_full(rng):
    rho = random_density_matrix(6, rng)
    np.testing.assert_array_equal(partial_transpose(rho, [2, 3], []), rho)
    np.testing.assert_allclose(partial_transpose(rho, [2, 3], [1, 2]), rho.T)


def test_partial_transpose_involution_and_commuting(rng):
    rho = random_density_matrix(12, rng)
    dims = [2, 3, 2]
    np.testing.assert_allclose(partial_transpose(partial_transpose(rho, dims, [2]), dims, [2]), rho)
    ab = partial_transpose(partial_transpose(rho, dims, [1]), dims, [3])
    ba = partial_transpose(partial_transpose(rho, dims, [3]), dims, [1])
    np.testing.assert_allclose(ab, ba)


def test_swap_matrix():
    expected = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    np.testing.assert_array_equal(permutation_operator((2, 1), 2), expected)


def test_swap_eigenvalues_pm_one():
    ev = eigenvalues_hermitian(swap_operator(3))
    np.testing.assert_allclose(ev, [-1] * 3 + [1] * 6)


def test_three_cycle_order_three():
    v = permutation_operator(permutation_from_cycles(3, (1, 2, 3)), 3)
    np.testing.assert_allclose(v @ v @ v, np.eye(27))


def test_permutation_action_on_product_vectors(rng):
    phis = [random_pure_state(3, rng) for _ in range(3)]
    pi = permutation_from_cycles(3, (1, 2, 3))  # 1->2, 2->3, 3->1
    v = permutation_operator(pi, 3)
    # slot k of the output holds phi_{pi^{-1}(k)}
    expected = tensor_product(phis[2][:, None], phis[0][:, None], phis[1][:, None])[:, 0]
    np.testing.assert_allclose(v @ tensor_product(*[p[:, None] for p in phis])[:, 0], expected)


@pytest.mark.parametrize("d", [2, 3])
def test_permutation_operators_form_representation(d):
    perms = list(itertools.permutations((1, 2, 3)))
    for p in perms:
        vp = permutation_operator(p, d)
        np.testing.assert_allclose(vp @ vp.conj().T, np.eye(d**3))
        for s in perms:
            composed = tuple(p[s[k] - 1] for k in range(3))
            np.testing.assert_allclose(vp @ permutation_operator(s, d), permutation_operator(composed, d))
    np.testing.assert_array_equal(permutation_operator((1, 2, 3), d), np.eye(d**3))


def test_permute_systems_is_conjugation(rng):
    dims = [2, 3, 2]
    rho = random_hermitian(12, rng)
    order = (3, 1, 2)
    p = system_permutation_matrix(dims, order)
    np.testing.assert_allclose(permute_systems(rho, dims, order), p @ rho @ p.T)


def test_spectrum_invariant_under_permutation(rng):
    h = random_hermitian(8, rng)
    v = permutation_operator((2, 3, 1), 2)
    np.testing.assert_allclose(eigenvalues_hermitian(v @ h @ v.T), eigenvalues_hermitian(h), atol=1e-12)


def test_eigenvalues_reduction_of_bell():
    np.testing.assert_allclose(eigenvalues_hermitian(np.eye(4) / 2 - BELL_DM), [-0.5, 0.5, 0.5, 0.5], atol=1e-15)


def test_eigenvalues_diagonal():
    np.testing.assert_array_equal(eigenvalues_hermitian(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])


def test_eigenvalues_two_by_two_quadratic_oracle(rng):
    for _ in range(20):
        h = random_hermitian(2, rng)
        t, det = np.trace(h).real, np.linalg.det(h).real
        disc = np.sqrt(t * t - 4 * det)
        np.testing.assert_allclose(eigenvalues_hermitian(h), [(t - disc) / 2, (t + disc) / 2], atol=1e-12)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(HermiticityError):
        eigenvalues_hermitian(np.array([[0, 1], [0, 0]]))


def test_eigenvalues_absorb_rounding():
    h = np.array([[1, 1e-13], [0, 1]])
    np.testing.assert_allclose(eigenvalues_hermitian(h), [1, 1], atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(dim=st.integers(1, 16), seed=st.integers(0, 2**32 - 1))
def test_eigenvalue_sum_is_trace(dim, seed):
    h = random_hermitian(dim, np.random.default_rng(seed)) * 10
    ev = eigenvalues_hermitian(h)
    assert np.all(np.diff(ev) >= 0)
    assert abs(ev.sum() - np.trace(h).real) <= 1e-9 * max(1, np.max(np.abs(h)))


def test_psd_checks(rng):
    assert is_psd(np.eye(3))
    assert not is_psd(np.eye(4) / 2 - BELL_DM, 1e-10)
    g = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    assert is_psd(g.conj().T @ g)
    assert min_eigenvalue(np.diag([2.0, -1.0])) == -1.0


def test_schmidt_bell():
    sd = schmidt_decompose(BELL, [2, 2])
    np.testing.assert_allclose(sd.coefficients, [1 / np.sqrt(2)] * 2)
    np.testing.assert_allclose(sd.reconstruct(), BELL, atol=1e-12)


def test_schmidt_product():
    sd = schmidt_decompose(ket(0, 0), [2, 2])
    np.testing.assert_allclose(sd.coefficients, [1.0])


def test_schmidt_random(rng):
    v = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    sd = schmidt_decompose(v, [3, 4])
    assert np.sum(sd.coefficients**2) == pytest.approx(np.vdot(v, v).real)
    assert np.all(np.diff(sd.coefficients) <= 0)
    np.testing.assert_allclose(sd.left.conj().T @ sd.left, np.eye(sd.rank), atol=1e-12)
    np.testing.assert_allclose(sd.right.conj().T @ sd.right, np.eye(sd.rank), atol=1e-12)
    np.testing.assert_allclose(sd.reconstruct(), v, atol=1e-10)


def test_schmidt_wrong_dims():
    with pytest.raises(ShapeError):
        schmidt_decompose(np.ones(8), [2, 2, 2])
