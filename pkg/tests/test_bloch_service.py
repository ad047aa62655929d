import numpy as np
import pytest

from discordlab.models.state import DensityMatrix
from discordlab.services.bloch_service import BlochService, NotQubitA, PAULI
from discordlab.services.state_service import StateService
from tests.conftest import random_states


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_gell_mann_basis_is_orthonormal(n):
    basis = BlochService.gell_mann_basis(n)
    assert basis.shape == (n * n - 1, n, n)
    gram = np.einsum('aij,bji->ab', basis, basis)
    np.testing.assert_allclose(gram, 2 * np.eye(n * n - 1), atol=1e-14)
    np.testing.assert_allclose(np.einsum('aii->a', basis), 0, atol=1e-15)
    np.testing.assert_allclose(basis, basis.conj().transpose(0, 2, 1))


def test_gell_mann_qubit_is_pauli():
    np.testing.assert_array_equal(BlochService.gell_mann_basis(2), PAULI)


def test_bell_coherence_vectors(bell):
    form = BlochService.decompose_2xn(bell)
    np.testing.assert_allclose(form.x, 0, atol=1e-15)
    np.testing.assert_allclose(form.y, 0, atol=1e-15)
    np.testing.assert_allclose(form.T, np.diag([1.0, -1.0, 1.0]), atol=1e-15)


@pytest.mark.parametrize('n', [2, 3, 4, 32])
def test_reconstruct_round_trip(n):
    for rho in random_states((2, n), 5, seed=n):
        assert np.max(np.abs(BlochService.reconstruct(BlochService.decompose_2xn(rho)) - rho.matrix)) < 1e-10


def test_decompose_needs_qubit():
    with pytest.raises(NotQubitA):
        BlochService.decompose_2xn(StateService.max_entangled(3))
    with pytest.raises(NotQubitA):
        BlochService.gd2_closed_form(StateService.max_entangled(3))


class TestClosedForm:

    def test_classical_quantum_state(self, cq):
        assert abs(BlochService.gd2_closed_form(cq)) <= 1e-10

    def test_classical_quantum_in_rotated_basis(self):
        u = StateService.haar_unitary(2, 8)
        rho = StateService.cq_state([0.3, 0.7], [np.diag([1.0, 0, 0]), np.eye(3) / 3])
        assert abs(BlochService.gd2_closed_form(StateService.local_unitary(rho, u, np.eye(3)))) <= 1e-10

    def test_bell(self, bell):
        assert BlochService.gd2_closed_form(bell) == pytest.approx(0.5, abs=1e-12)

    def test_werner_counterexample(self, werner_2x32):
        assert abs(BlochService.gd2_closed_form(werner_2x32) - 1 / 98) < 1e-9

    def test_maximally_mixed(self, maximally_mixed):
        assert BlochService.gd2_closed_form(maximally_mixed) == 0.0

    def test_local_unitary_invariance(self):
        for i, rho in enumerate(random_states((2, 3), 10, seed=12)):
            left, right = StateService.haar_unitary(2, 100 + i), StateService.haar_unitary(3, 200 + i)
            moved = StateService.local_unitary(rho, left, right)
            assert abs(BlochService.gd2_closed_form(moved) - BlochService.gd2_closed_form(rho)) < 1e-9

    def test_product_of_qubit_and_anything(self):
        rho = DensityMatrix.from_array(np.kron(np.diag([0.3, 0.7]), np.eye(4) / 4), (2, 4))
        assert abs(BlochService.gd2_closed_form(rho)) <= 1e-12
