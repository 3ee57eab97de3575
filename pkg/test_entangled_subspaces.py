"""
Entangled subspace tests: Vandermonde span F, uniform level vectors T,
membership in S and the bipartite generator link
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from backend.app.core.errors import RangeError, ShapeError
from backend.app.models.tensor_models import Dims
from backend.app.services.subspaces import exact_linalg
from backend.app.services.subspaces.entangled_subspaces import (
    build_T,
    default_lambda_grid,
    graded_subspace,
    step_generators,
    linking_check,
    membership_in_S,
    membership_in_S_exact,
    orthonormal_rows,
    product_vector_in_T,
    projector_S,
    projector_T,
    span_residual,
    sum_zero_level_generators,
    t_complement_residual,
    vandermonde_family,
    vandermonde_vector,
)
from backend.app.services.tensor.index_algebra import level_sizes, rank_of, uniform_level_vector

SYSTEMS = [(2, 2), (3, 3), (4, 4), (2, 3), (2, 4), (3, 4), (2, 2, 2), (2, 2, 3), (2, 3, 4), (3, 3, 3)]


def small_dims():
    for k in (2, 3, 4):
        for d in itertools.product((2, 3, 4), repeat=k):
            if np.prod(d) <= 256:
                yield d


def test_dimension_formula_over_small_systems():
    checked = 0
    for d in small_dims():
        dims = Dims(d=d)
        sizes = level_sizes(dims)
        assert sum(sizes[n] - 1 for n in range(1, dims.N)) == dims.M
        assert graded_subspace(dims).dim_S == dims.M
        checked += 1
    assert checked == 3 ** 2 + 3 ** 3 + 3 ** 4


def test_graded_subspace_dim_T():
    summary = graded_subspace(Dims.of(2, 3, 4))
    assert summary.dim_T == 7
    assert summary.levels[0].sum_zero_dim == 0


# Vandermonde vectors

def test_vandermonde_examples():
    assert_array_equal(vandermonde_vector(Dims.of(2, 2), 2), [1, 2, 2, 4])
    assert_array_equal(vandermonde_vector(Dims.of(2, 3), 0), [1, 0, 0, 0, 0, 0])
    assert_array_equal(vandermonde_vector(Dims.of(2, 2, 2), 1), np.ones(8))


def test_vandermonde_is_polynomial_in_level_vectors():
    dims = Dims.of(2, 3, 2)
    lam = 0.7 - 0.4j
    expected = sum(lam ** n * uniform_level_vector(dims, n) for n in range(dims.N + 1))
    assert_allclose(vandermonde_vector(dims, lam), expected, atol=1e-12)


def test_vandermonde_family_needs_N_plus_one():
    with pytest.raises(RangeError):
        vandermonde_family(Dims.of(2, 2), [0, 1])


# Uniform level vectors and T

def test_uniform_level_vector_examples():
    assert_array_equal(uniform_level_vector(Dims.of(2, 2), 1), [0, 1, 1, 0])
    assert_array_equal(uniform_level_vector(Dims.of(2, 2, 2), 2), [0, 0, 0, 1, 0, 1, 1, 0])


def test_uniform_level_vector_out_of_range():
    with pytest.raises(RangeError):
        uniform_level_vector(Dims.of(2, 2), 3)


@pytest.mark.parametrize("d, count", [((2, 2), 3), ((2, 2, 2), 4), ((3, 3), 5)])
def test_build_T_orthonormal(d, count):
    rows = build_T(Dims(d=d))
    assert rows.shape[0] == count
    assert_allclose(rows @ rows.conj().T, np.eye(count), atol=1e-12)


@pytest.mark.parametrize("d", SYSTEMS)
def test_vandermonde_vectors_lie_in_T(d):
    dims = Dims(d=d)
    rows = build_T(dims)
    for lam in default_lambda_grid(dims) + [0.5 + 0.5j, -1.0]:
        assert span_residual(vandermonde_vector(dims, lam), rows) <= 1e-10


@pytest.mark.parametrize("d", [(2, 2), (2, 3), (3, 3)])
def test_F_equals_T(d):
    dims = Dims(d=d)
    f_rows = orthonormal_rows(vandermonde_family(dims).vectors)
    assert f_rows.shape[0] == dims.N + 1
    for u in build_T(dims):
        assert span_residual(u, f_rows) <= 1e-9


@pytest.mark.parametrize("d", [(2, 2), (2, 3)])
def test_F_independent_of_lambda_grid(d):
    dims = Dims(d=d)
    first = orthonormal_rows(vandermonde_family(dims).vectors)
    second = vandermonde_family(dims, default_lambda_grid(dims, offset=dims.N + 1)).vectors
    for v in second:
        assert span_residual(v, first) <= 1e-9


def test_projectors_are_complementary():
    dims = Dims.of(2, 3)
    p_s, p_t = projector_S(dims), projector_T(dims)
    assert_allclose(p_s + p_t, np.eye(dims.D), atol=1e-12)
    assert_allclose(p_s @ p_s, p_s, atol=1e-12)
    assert abs(np.trace(p_s).real - dims.M) <= 1e-10


def test_levels_are_mutually_orthogonal():
    dims = Dims.of(2, 3, 2)
    for n, m in itertools.combinations(range(dims.N + 1), 2):
        assert np.vdot(uniform_level_vector(dims, n), uniform_level_vector(dims, m)) == 0


# Membership

def test_membership_exact_examples():
    dims = Dims.of(2, 2)
    assert membership_in_S_exact(uniform_level_vector(dims, 1), dims) == Fraction(1)
    assert membership_in_S_exact([0, 1, -1, 0], dims) == Fraction(0)
    assert membership_in_S_exact(vandermonde_vector(dims, 2), dims) == Fraction(1)
    assert membership_in_S_exact([1, 1, 0, 0], dims) == Fraction(3, 4)


def test_membership_float_path():
    dims = Dims.of(2, 3)
    assert abs(membership_in_S(vandermonde_vector(dims, 0.5 + 0.3j), dims) - 1.0) <= 1e-12
    assert membership_in_S(np.array([0, 1, 0, -1, 0, 0]) / np.sqrt(2), dims) <= 1e-15


def test_membership_of_zero_vector():
    with pytest.raises(ShapeError):
        membership_in_S(np.zeros(4), Dims.of(2, 2))


def test_sum_zero_generators_are_in_S():
    dims = Dims.of(2, 2, 3)
    for n in range(1, dims.N):
        generators = sum_zero_level_generators(dims, n)
        assert len(generators) == level_sizes(dims)[n] - 1
        for g in generators:
            assert membership_in_S_exact(g, dims) == 0


# Product vectors in T

def test_product_vector_at_infinity():
    dims = Dims.of(2, 3)
    z = product_vector_in_T(dims, "inf")
    expected = np.zeros(6)
    expected[rank_of(dims, (1, 2))] = 1
    assert_array_equal(z, expected)
    assert_array_equal(product_vector_in_T(dims, np.inf), expected)


@pytest.mark.parametrize("lam", [0, 1, -1, 1j, "inf", 2.5])
def test_product_vectors_in_T(lam):
    dims = Dims.of(2, 3, 2)
    assert t_complement_residual(product_vector_in_T(dims, lam), dims) <= 1e-10


# Bipartite generators

def test_two_qubit_generator_is_singlet():
    generators = step_generators(2, 2)
    assert len(generators) == 1
    assert generators[0].level == 1
    assert_array_equal(generators[0].ket, [0, 1, -1, 0])


def test_generators_are_level_supported():
    dims = Dims.of(2, 3)
    generators = step_generators(2, 3)
    assert [g.level for g in generators] == [1, 2]
    for g in generators:
        assert membership_in_S_exact(g.ket, dims) == 0


@pytest.mark.parametrize("d1, d2", [(2, 3), (3, 3), (3, 4), (4, 4)])
def test_linking(d1, d2):
    dims = Dims.of(d1, d2)
    generators = step_generators(d1, d2)
    for g in generators:
        for n in range(dims.N + 1):
            u = exact_linalg.as_gaussian_integers(uniform_level_vector(dims, n))
            assert exact_linalg.inner(u, exact_linalg.as_gaussian_integers(g.ket)) == (0, 0)
    assert exact_linalg.gram_rank_exact([g.ket for g in generators]) == dims.M

    report = linking_check(d1, d2)
    assert report["linked"]
    assert report["gram_rank"] == report["M"] == dims.M
    assert all(row["same_span"] for row in report["per_level"])
