import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qkdclone.qstate import (
    DensityOperator,
    PureState,
    density_from_pure,
    fidelity_product_form,
    fidelity_trace_norm,
    hs_distance,
    ket,
    partial_trace,
    tensor,
    trace_distance,
)


def diag(*p):
    return DensityOperator(np.diag(p))


def random_density(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    m = (m + m.conj().T) / 2
    return DensityOperator(m / np.trace(m).real)


class TestConstruction:
    def test_unnormalized_state_rejected(self):
        with pytest.raises(ValueError):
            PureState([1.0, 1.0])

    def test_dims_must_match_length(self):
        with pytest.raises(ValueError):
            PureState([1, 0, 0, 0], (2, 3))

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            DensityOperator([[0.5, 0.1], [0.0, 0.5]])

    def test_trace_checked(self):
        with pytest.raises(ValueError):
            DensityOperator(np.diag([0.5, 0.4]))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(ValueError):
            DensityOperator(np.diag([1.2, -0.2]))

    def test_values_are_read_only(self):
        rho = diag(0.3, 0.7)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestDensityFromPure:
    def test_basis_projector(self):
        np.testing.assert_allclose(density_from_pure(ket("0")).matrix, np.diag([1, 0]))

    def test_plus_state(self):
        plus = PureState.normalized([1, 1])
        np.testing.assert_allclose(density_from_pure(plus).matrix, np.full((2, 2), 0.5), atol=1e-15)

    def test_phi_alpha_sq_03(self):
        phi = PureState([math.sqrt(0.3), math.sqrt(0.7)])
        expected = np.array([[0.3, math.sqrt(0.21)], [math.sqrt(0.21), 0.7]])
        rho = density_from_pure(phi)
        np.testing.assert_allclose(rho.matrix, expected, atol=1e-15)
        assert np.linalg.matrix_rank(rho.matrix) == 1


class TestTensor:
    def test_kets(self):
        v = tensor(ket("0"), ket("0"))
        assert v.dims == (2, 2)
        np.testing.assert_array_equal(v.amplitudes, [1, 0, 0, 0])

    def test_density(self):
        r = tensor(diag(1, 0), diag(0, 1))
        np.testing.assert_array_equal(r.matrix, np.diag([0, 1, 0, 0]))

    def test_three_factor_index_bookkeeping(self):
        rng = np.random.default_rng(7)
        phi = PureState([math.sqrt(0.3), math.sqrt(0.7)])
        q = PureState.normalized(rng.normal(size=4) + 1j * rng.normal(size=4))
        v = tensor(phi, ket("0"), q)
        assert v.dims == (2, 2, 4) and v.dim == 16
        # brute force: leftmost factor is slowest
        for i, j, k in itertools.product(range(2), range(2), range(4)):
            want = phi.amplitudes[i] * ket("0").amplitudes[j] * q.amplitudes[k]
            assert v.amplitudes[i * 8 + j * 4 + k] == pytest.approx(want, abs=1e-15)

    def test_mixed_kinds_rejected(self):
        with pytest.raises(TypeError):
            tensor(ket("0"), diag(1, 0))


class TestPartialTrace:
    def test_product_state(self):
        ra, rb = diag(0.3, 0.7), diag(0.9, 0.1)
        out = partial_trace(tensor(ra, rb), [0])
        np.testing.assert_allclose(out.matrix, ra.matrix, atol=1e-15)
        out = partial_trace(tensor(ra, rb), [1])
        np.testing.assert_allclose(out.matrix, rb.matrix, atol=1e-15)

    def test_bell_state(self):
        bell = PureState.normalized([1, 0, 0, 1], (2, 2))
        out = partial_trace(density_from_pure(bell), [0])
        np.testing.assert_allclose(out.matrix, np.eye(2) / 2, atol=1e-15)

    def test_against_explicit_sum(self):
        rng = np.random.default_rng(3)
        rho = random_density(rng, 16)
        rho = DensityOperator(rho.matrix, (2, 2, 4))
        t = rho.matrix.reshape(2, 2, 4, 2, 2, 4)
        brute = np.zeros((2, 2), dtype=complex)
        for i, ip in itertools.product(range(2), range(2)):
            for j, k in itertools.product(range(2), range(4)):
                brute[i, ip] += t[i, j, k, ip, j, k]
        np.testing.assert_allclose(partial_trace(rho, [0]).matrix, brute, atol=1e-14)

    def test_composition(self):
        rng = np.random.default_rng(11)
        rho = DensityOperator(random_density(rng, 16).matrix, (2, 2, 4))
        step = partial_trace(partial_trace(rho, [0, 1]), [1])
        direct = partial_trace(rho, [1])
        np.testing.assert_allclose(step.matrix, direct.matrix, atol=1e-14)

    @pytest.mark.parametrize("keep", [[], [3], [-1]])
    def test_invalid_keep(self, keep):
        with pytest.raises(ValueError):
            partial_trace(tensor(diag(1, 0), diag(0, 1)), keep)


class TestFidelity:
    def test_identical_pure(self):
        rho = density_from_pure(PureState.normalized([1, 2j]))
        assert fidelity_product_form(rho, rho) == pytest.approx(1.0, abs=1e-12)
        assert fidelity_trace_norm(rho, rho) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        a, b = density_from_pure(ket("0")), density_from_pure(ket("1"))
        assert fidelity_product_form(a, b) == pytest.approx(0.0, abs=1e-12)
        assert fidelity_trace_norm(a, b) == pytest.approx(0.0, abs=1e-12)

    def test_swapped_diagonals(self):
        # eigenvalues of the product are {0.21, 0.21} -> (2 sqrt 0.21)^2
        a, b = diag(0.3, 0.7), diag(0.7, 0.3)
        assert fidelity_product_form(a, b) == pytest.approx(0.84, abs=1e-12)
        assert fidelity_trace_norm(a, b) == pytest.approx(0.84, abs=1e-12)
        assert fidelity_trace_norm(a, b, squared=False) == pytest.approx(2 * math.sqrt(0.21), abs=1e-12)

    def test_maximally_mixed_vs_pure(self):
        mixed = diag(0.5, 0.5)
        pure = density_from_pure(PureState.normalized([1, 1j]))
        # <psi| I/2 |psi> = 1/2 for any pure psi
        assert fidelity_product_form(mixed, pure) == pytest.approx(0.5, abs=1e-12)
        assert fidelity_trace_norm(mixed, pure) == pytest.approx(0.5, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            fidelity_product_form(diag(1, 0), tensor(diag(1, 0), diag(1, 0)))
        with pytest.raises(ValueError):
            fidelity_trace_norm(diag(1, 0), tensor(diag(1, 0), diag(1, 0)))

    def test_symmetric_on_random_pairs(self):
        rng = np.random.default_rng(5)
        for dim in (2, 4):
            for _ in range(20):
                a, b = random_density(rng, dim), random_density(rng, dim)
                assert fidelity_product_form(a, b) == pytest.approx(fidelity_product_form(b, a), abs=1e-12)

    def test_noncommuting_forms_agree_on_qubits(self):
        # the product form is Tr sqrt(sqrt(a) b sqrt(a)) squared, the same
        # quantity as the trace-norm form, even when a and b do not commute
        rng = np.random.default_rng(9)
        for _ in range(20):
            a, b = random_density(rng, 2), random_density(rng, 2)
            assert fidelity_product_form(a, b) == pytest.approx(fidelity_trace_norm(a, b), abs=1e-9)


class TestDistances:
    def test_trace_distance_identical(self):
        assert trace_distance(diag(0.3, 0.7), diag(0.3, 0.7)) == 0.0

    def test_trace_distance_orthogonal(self):
        a, b = density_from_pure(ket("0")), density_from_pure(ket("1"))
        assert trace_distance(a, b) == pytest.approx(1.0)

    def test_trace_distance_swapped(self):
        assert trace_distance(diag(0.3, 0.7), diag(0.7, 0.3)) == pytest.approx(0.4, abs=1e-15)

    def test_hs_distance_swapped(self):
        a2 = 0.3
        assert hs_distance(diag(a2, 1 - a2), diag(1 - a2, a2)) == pytest.approx(2 * (2 * a2 - 1) ** 2, abs=1e-15)

    def test_hs_distance_wz_vs_ideal(self):
        a2 = 0.4
        a, b = math.sqrt(a2), math.sqrt(1 - a2)
        ideal = density_from_pure(PureState([a, b]))
        # difference has only the off-diagonal entries +-ab
        assert hs_distance(diag(a2, 1 - a2), ideal) == pytest.approx(2 * a2 * (1 - a2), abs=1e-15)

    def test_mismatch(self):
        with pytest.raises(ValueError):
            trace_distance(diag(1, 0), tensor(diag(1, 0), diag(1, 0)))
        with pytest.raises(ValueError):
            hs_distance(diag(1, 0), tensor(diag(1, 0), diag(1, 0)))


probabilities = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@settings(max_examples=500, deadline=None)
@given(p=probabilities, q=probabilities)
def test_diagonal_qubit_distance_inequalities(p, q):
    a, b = diag(p, 1 - p), diag(q, 1 - q)
    F = fidelity_product_form(a, b)
    D = trace_distance(a, b)
    assert fidelity_trace_norm(a, b) == pytest.approx(F, abs=1e-10)
    assert D**2 <= 1 - F**2 + 1e-12
    assert hs_distance(a, b) <= 2 * D**2 + 1e-12
