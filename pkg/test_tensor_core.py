"""
Tensor core tests: index enumeration, level sets, product vectors,
partial transposes, the Hermitian eigensolver and the reversal operator
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from backend.app.core import config as config_module
from backend.app.core.config import Limits, Settings, Tolerances
from backend.app.core.errors import DimsError, HypothesisError, NotHermitianError, ShapeError, SlotError
from backend.app.models.tensor_models import Dims
from backend.app.services.subspaces.entangled_subspaces import projector_S
from backend.app.services.tensor.eigensolver import hermitian_eigh, hermitian_eigenvalues, jacobi_eigh, require_psd
from backend.app.services.tensor.index_algebra import (
    enumerate_indices,
    kron,
    level_sets,
    level_size_closed_form,
    level_sizes,
    level_sizes_from_polynomial,
    rank_of,
    reversal_operator,
    uniform_level_vector,
)
from backend.app.services.tensor.operators import as_hermitian, embed_local, is_unit, rank_one
from backend.app.services.tensor.partial_transpose import (
    cuts_up_to_complement,
    partial_transpose,
    partial_transpose_cut,
)

SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
SYSTEMS = [(2, 2), (3, 3), (4, 4), (2, 3), (2, 4), (3, 4), (2, 2, 2), (2, 2, 3), (2, 3, 4), (3, 3, 3)]


def random_hermitian(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return z + z.conj().T


def random_state(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = z @ z.conj().T
    return rho / np.trace(rho).real


# Dims

def test_dims_derived_quantities():
    dims = Dims.of(2, 3, 4)
    assert (dims.k, dims.N, dims.D, dims.M) == (3, 6, 24, 24 - 9 + 2)


@pytest.mark.parametrize("bad", [(2,), (1, 3), (2, 0), (2,) * 13])
def test_dims_rejects_invalid(bad):
    with pytest.raises(DimsError):
        Dims(d=bad)


def test_dims_parses_comma_text():
    assert Dims(d="2,3,4").d == (2, 3, 4)


def test_dense_limit_follows_settings(monkeypatch):
    monkeypatch.setattr(config_module, "_settings", Settings(limits=Limits(max_dimension=16)))
    assert Dims.of(2, 2, 2, 2).D == 16
    with pytest.raises(DimsError) as excinfo:
        Dims.of(2, 2, 2, 2, 2)
    assert excinfo.value.details["max_dimension"] == 16


# Enumeration and levels

def test_enumerate_two_qubits():
    indices = enumerate_indices(Dims.of(2, 2))
    assert [m.i for m in indices] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [m.level for m in indices] == [0, 1, 1, 2]
    assert [m.rank for m in indices] == [0, 1, 2, 3]


def test_enumerate_qubit_qutrit_levels():
    indices = enumerate_indices(Dims.of(2, 3))
    assert len(indices) == 6
    assert [m.level for m in indices] == [0, 1, 2, 1, 2, 3]


def test_three_qubits_level_one():
    indices = enumerate_indices(Dims.of(2, 2, 2))
    assert len(indices) == 8
    assert sum(1 for m in indices if m.level == 1) == 3


@pytest.mark.parametrize("d, sizes", [
    ((3, 3), [1, 2, 3, 2, 1]),
    ((2, 2, 2), [1, 3, 3, 1]),
    ((2, 3), [1, 2, 2, 1]),
])
def test_level_sizes(d, sizes):
    dims = Dims(d=d)
    assert level_sizes(dims) == sizes
    assert level_sizes_from_polynomial(dims) == sizes
    assert sum(sizes) == dims.D


@pytest.mark.parametrize("d1, d2", [(2, 2), (2, 5), (3, 4), (4, 4), (5, 3)])
def test_bipartite_closed_form(d1, d2):
    dims = Dims.of(d1, d2)
    assert [level_size_closed_form(d1, d2, n) for n in range(dims.N + 1)] == level_sizes(dims)


@pytest.mark.parametrize("d", SYSTEMS)
def test_level_sets_partition_indices(d):
    dims = Dims(d=d)
    sets = level_sets(dims)
    assert list(sets) == list(range(dims.N + 1))
    members = [i for n in sets for i in sets[n]]
    assert len(set(members)) == dims.D
    assert sorted(members) == [m.i for m in enumerate_indices(dims)]
    for n, level in sets.items():
        assert level == sorted(level)
        assert all(sum(i) == n for i in level)
    assert sets[0] == [(0,) * dims.k]
    assert sets[dims.N] == [tuple(x - 1 for x in dims.d)]
    sizes = [len(sets[n]) for n in sets]
    assert sizes == level_sizes(dims)
    if dims.k == 2:
        assert sizes == [level_size_closed_form(*dims.d, n) for n in sets]


def test_rank_of_rejects_out_of_range():
    with pytest.raises(ShapeError):
        rank_of(Dims.of(2, 2), (0, 2))


# kron

def test_kron_basis_and_signs():
    dims = Dims.of(2, 2)
    assert_array_equal(kron([[1, 0], [1, 0]], dims), [1, 0, 0, 0])
    assert_array_equal(kron([[1, 1], [1, -1]], dims), [1, -1, 1, -1])


def test_kron_vandermonde_example():
    assert_array_equal(kron([[1, 2], [1, 2, 4]], Dims.of(2, 3)), [1, 2, 4, 2, 4, 8])


def test_kron_norm_is_product():
    rng = np.random.default_rng(3)
    factors = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for d in (2, 3, 2)]
    assert abs(np.linalg.norm(kron(factors)) - np.prod([np.linalg.norm(f) for f in factors])) <= 1e-12


def test_kron_length_mismatch():
    with pytest.raises(ShapeError):
        kron([[1, 0], [1, 0, 0]], Dims.of(2, 2))


# Partial transpose

def test_pt_leaves_diagonal_projectors():
    dims = Dims.of(2, 3)
    for r in range(dims.D):
        e = np.zeros(dims.D)
        e[r] = 1
        assert_array_equal(partial_transpose(rank_one(e), dims, 1), rank_one(e))


def test_pt_moves_off_diagonal_entry():
    dims = Dims.of(2, 2)
    op = np.zeros((4, 4), dtype=complex)
    op[rank_of(dims, (0, 0)), rank_of(dims, (1, 1))] = 1
    expected = np.zeros((4, 4), dtype=complex)
    expected[rank_of(dims, (1, 0)), rank_of(dims, (0, 1))] = 1
    assert_array_equal(partial_transpose(op, dims, 1), expected)


def test_singlet_partial_transpose_spectrum():
    dims = Dims.of(2, 2)
    values = hermitian_eigenvalues(partial_transpose(rank_one(SINGLET), dims, 1))
    assert_allclose(values, [-0.5, 0.5, 0.5, 0.5], atol=1e-10)


def test_pt_involution_linearity_and_hermiticity():
    rng = np.random.default_rng(7)
    dims = Dims.of(2, 3, 2)
    a = random_hermitian(rng, dims.D)
    b = rng.standard_normal((dims.D, dims.D)) + 1j * rng.standard_normal((dims.D, dims.D))
    for j in range(1, dims.k + 1):
        assert_array_equal(partial_transpose(partial_transpose(a, dims, j), dims, j), a)
        pa = partial_transpose(a, dims, j)
        assert_array_equal(pa, pa.conj().T)
        assert_allclose(partial_transpose(2 * a - 3j * b, dims, j),
                        2 * pa - 3j * partial_transpose(b, dims, j), atol=1e-12)
        assert abs(np.trace(pa) - np.trace(a)) <= 1e-12


def test_pt_rejects_bad_slot():
    with pytest.raises(SlotError):
        partial_transpose(np.eye(4), Dims.of(2, 2), 3)


def test_pt_spectrum_invariant_under_local_unitary():
    rng = np.random.default_rng(11)
    dims = Dims.of(2, 3)
    rho = random_state(rng, dims.D)
    for j in (1, 2):
        q, _ = np.linalg.qr(rng.standard_normal((dims.d[j - 1],) * 2) + 1j * rng.standard_normal((dims.d[j - 1],) * 2))
        u = embed_local(q, dims, j)
        rotated = u @ rho @ u.conj().T
        assert_allclose(hermitian_eigenvalues(partial_transpose(rotated, dims, j)),
                        hermitian_eigenvalues(partial_transpose(rho, dims, j)), atol=1e-8)


def test_cut_singleton_matches_slot():
    rng = np.random.default_rng(2)
    dims = Dims.of(2, 2, 3)
    a = random_hermitian(rng, dims.D)
    assert_array_equal(partial_transpose_cut(a, dims, {2}), partial_transpose(a, dims, 2))


def test_cut_and_complement_share_spectrum():
    rng = np.random.default_rng(5)
    dims = Dims.of(2, 3, 2)
    a = random_hermitian(rng, dims.D)
    assert_allclose(hermitian_eigenvalues(partial_transpose_cut(a, dims, {1, 2})),
                    hermitian_eigenvalues(partial_transpose(a, dims, 3)), atol=1e-10)


def test_three_qubit_cut_on_projector_S():
    dims = Dims.of(2, 2, 2)
    p = projector_S(dims)
    assert_allclose(hermitian_eigenvalues(partial_transpose_cut(p, dims, [1, 2])),
                    hermitian_eigenvalues(partial_transpose(p, dims, 3)), atol=1e-10)


@pytest.mark.parametrize("cut", [[], [1, 2, 3]])
def test_cut_must_be_proper(cut):
    with pytest.raises(SlotError):
        partial_transpose_cut(np.eye(8), Dims.of(2, 2, 2), cut)


def test_cuts_up_to_complement():
    assert cuts_up_to_complement(Dims.of(2, 2)) == ((1,),)
    assert cuts_up_to_complement(Dims.of(2, 2, 2)) == ((1,), (2,), (1, 2))


# Eigensolver

def test_identity_and_rank_one():
    assert_allclose(hermitian_eigenvalues(np.eye(4)), [1, 1, 1, 1], atol=1e-12)
    v = np.array([1, 1j, 0, 1]) / np.sqrt(3)
    assert_allclose(hermitian_eigenvalues(rank_one(v)), [0, 0, 0, 1], atol=1e-12)


def test_non_hermitian_rejected():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


def test_jacobi_matches_numpy_and_residuals():
    rng = np.random.default_rng(13)
    a = random_hermitian(rng, 12)
    values, vectors = jacobi_eigh(a)
    assert np.all(np.diff(values) >= 0)
    assert_allclose(values, np.linalg.eigvalsh(a), atol=1e-9)
    assert abs(values.sum() - np.trace(a).real) <= 1e-9
    for s in range(12):
        assert np.linalg.norm(a @ vectors[:, s] - values[s] * vectors[:, s]) <= 1e-8


def test_numpy_method_selectable():
    rng = np.random.default_rng(17)
    a = random_hermitian(rng, 6)
    values, _ = hermitian_eigh(a, method="numpy")
    assert_allclose(values, hermitian_eigenvalues(a, method="jacobi"), atol=1e-10)


def test_projector_spectrum_sanity():
    dims = Dims.of(2, 3)
    values = hermitian_eigenvalues(projector_S(dims))
    assert values[0] >= -1e-10 and values[-1] <= 1 + 1e-10
    assert abs(values.sum() - dims.M) <= 1e-8


def test_hermitian_tolerance_follows_settings(monkeypatch):
    a = np.array([[1.0, 1e-6], [0.0, 2.0]])
    with pytest.raises(NotHermitianError):
        as_hermitian(a)
    monkeypatch.setattr(config_module, "_settings", Settings(tolerances=Tolerances(hermitian=1e-3)))
    as_hermitian(a)
    assert_allclose(hermitian_eigenvalues(a), [1, 2], atol=1e-6)


def test_unit_tolerance_follows_settings(monkeypatch):
    v = np.array([1.0 + 1e-6, 0.0])
    assert not is_unit(v)
    monkeypatch.setattr(config_module, "_settings", Settings(tolerances=Tolerances(unit_norm=1e-3)))
    assert is_unit(v)


def test_require_psd():
    P = projector_S(Dims.of(2, 2))
    values = require_psd(P, max_norm=1 + 1e-9)
    assert values[-1] == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(HypothesisError):
        require_psd(-P)
    with pytest.raises(HypothesisError):
        require_psd(2 * P, max_norm=1 + 1e-9)


# Reversal operator

def test_reversal_two_qubits():
    dims = Dims.of(2, 2)
    R = reversal_operator(dims)
    assert R[rank_of(dims, (1, 1)), rank_of(dims, (0, 0))] == 1
    assert R[rank_of(dims, (1, 0)), rank_of(dims, (0, 1))] == 1


def test_reversal_qutrit_qubit():
    dims = Dims.of(3, 2)
    R = reversal_operator(dims)
    assert R[rank_of(dims, (2, 1)), rank_of(dims, (0, 0))] == 1
    assert R[rank_of(dims, (0, 0)), rank_of(dims, (2, 1))] == 1


@pytest.mark.parametrize("d", [(2, 2), (3, 2), (2, 3, 4), (3, 3, 3)])
def test_reversal_involution_and_levels(d):
    dims = Dims(d=d)
    R = reversal_operator(dims)
    assert_array_equal(R @ R, np.eye(dims.D))
    assert_array_equal(R, R.conj().T)
    for n in range(dims.N + 1):
        assert_array_equal(R @ uniform_level_vector(dims, n), uniform_level_vector(dims, dims.N - n))
